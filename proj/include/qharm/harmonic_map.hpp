#pragma once

#include <span>
#include <string>
#include <vector>

#include "qharm/series.hpp"

namespace qharm {

/// f = h + conj(g) on the unit disk, both parts truncated at the same order.
///
/// `normalized` marks maps with h(0) = 0 and h'(0) = 1 (g(0) = 0 is implied
/// by the usual normalisation but is not enforced here).
struct HarmonicMap {
  TruncatedSeries h;
  TruncatedSeries g;
  std::string label;
  bool normalized = true;

  /// Throws std::invalid_argument when the orders differ or when a map flagged
  /// normalized violates h(0) = 0, h'(0) = 1 by more than 1e-12.
  HarmonicMap(TruncatedSeries h, TruncatedSeries g, std::string label, bool normalized = true);

  int order() const { return h.order(); }
  /// Taylor coefficient of z^n in h.
  Complex a(int n) const { return h[n]; }
  /// Taylor coefficient of z^n in g (f carries conj(b_n) on conj(z)^n).
  Complex b(int n) const { return g[n]; }

  Complex operator()(Complex z) const;
};

/// Closed-form description of a dilatation with sup |omega| <= k.
///
/// Linear:   omega(z) = k e^{i alpha} z.
/// Blaschke: omega(z) = k * rotation * [z] * prod (z - a_j) / (1 - conj(a_j) z),
///           with the leading factor z present when `vanishing` is set.
class DilatationSpec {
 public:
  enum class Kind { Linear, Blaschke };

  static DilatationSpec linear(double k, double alpha);
  static DilatationSpec blaschke(double k, std::vector<Complex> zeros, Complex rotation,
                                 bool vanishing);

  Kind kind() const { return kind_; }
  double k() const { return k_; }
  double alpha() const { return alpha_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  Complex rotation() const { return rotation_; }
  bool vanishing() const { return vanishing_; }
  bool has_real_coefficients() const;

  /// Exact value from the product form.
  Complex operator()(Complex z) const;
  /// Power series of omega to the given order.
  TruncatedSeries series(int order) const;
  /// max |omega| over `samples` equispaced points on |z| = radius.
  double sampled_sup(double radius, int samples) const;

  std::string describe() const;

 private:
  DilatationSpec() = default;

  Kind kind_ = Kind::Linear;
  double k_ = 0.0;
  double alpha_ = 0.0;
  std::vector<Complex> zeros_;
  Complex rotation_ = 1.0;
  bool vanishing_ = true;
};

inline constexpr double kDefaultQuasiRadii[] = {0.9, 0.99, 0.999};
inline constexpr int kDefaultQuasiAngles = 2048;

/// omega_f = g'/h' as a series. Throws DegenerateAnalyticPart if |h'(0)| <= 1e-14.
TruncatedSeries dilatation(const HarmonicMap& f);

/// |h'(z)|^2 - |g'(z)|^2 from the partial sums.
double jacobian_at(const HarmonicMap& f, Complex z);

/// max over sampled circles of |omega(z)| - k, using the dilatation series.
/// A value <= a small tolerance is consistent with K-quasiregularity. By the
/// maximum-modulus principle the outermost circle dominates when the series
/// is trustworthy there.
double quasiregular_excess(const HarmonicMap& f, double k,
                           std::span<const double> radii = kDefaultQuasiRadii,
                           int samples = kDefaultQuasiAngles);

/// Same check evaluated on the closed form of omega (no truncation error).
double quasiregular_excess(const DilatationSpec& omega,
                           std::span<const double> radii = kDefaultQuasiRadii,
                           int samples = kDefaultQuasiAngles);

/// f = f0 + conj(b1 f0): analytic part h0 + conj(b1) g0, co-analytic part
/// g0 + b1 h0. Throws AffineDegenerate when |b1| >= 1.
HarmonicMap affine_combine(const HarmonicMap& f0, Complex b1);

/// The convex companion of a starlike map: z H' = h, z G' = -g, H(0) = G(0) = 0,
/// so a_n(H) = a_n(h)/n and b_n(G) = -b_n(g)/n.
HarmonicMap star_to_convex(const HarmonicMap& f);

/// e^{-i theta} f(e^{i theta} z); coefficient moduli are unchanged.
HarmonicMap rotate(const HarmonicMap& f, double theta);

/// Sampled sign test for typical reality: the largest value of
/// max(0, -sign(Im z) Im f(z)) over off-axis points of the disk. Samples stay
/// inside radius min(0.95, trusted radius of the partial sums).
/// Throws NonRealCoefficients when some |Im c| exceeds 1e-10.
double typically_real_residual(const HarmonicMap& f, int samples = 10000);

}  // namespace qharm
