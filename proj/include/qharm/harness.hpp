#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qharm/bounds.hpp"
#include "qharm/harmonic_map.hpp"
#include "qharm/shear.hpp"

namespace qharm::harness {

/// Map families produced by shearing.
///
/// ConvexHalfplane   h + g = z/(1-z); convex, checked against a(n,k), b(n,k)
///                   and ||a_n| - |b_n|| <= 1.
/// DirectionConvex   h + g = phi with phi convex in the vertical direction
///                   (a convex atom or a Herglotz mixture); close-to-convex,
///                   checked against A(n,k), B(n,k) and the gap n.
/// TypicallyReal     h - g = Robertson mixture, omega with real coefficients;
///                   checked against A(n,k), B(n,k) and the gap n.
///
/// With a non-vanishing dilatation the map is renormalised to h'(0) = 1 and
/// checked against the lifted bounds (C_n, D_n for the half-plane family,
/// E_n, F_n for the others); the gap checks only apply when b_1 = 0.
enum class TrialFamily { ConvexHalfplane, DirectionConvex, TypicallyReal };

std::string_view to_string(TrialFamily f);
/// "convex-halfplane", "direction-convex", "typically-real". Throws ParseError.
TrialFamily parse_trial_family(std::string_view s);

struct TrialConfig {
  TrialFamily family = TrialFamily::ConvexHalfplane;
  double k = 0.5;
  int order = 32;
  int trials = 200;
  std::uint64_t seed = 1;
  int dilatation_degree = 2;
  int atoms = 3;               ///< mixture size for the analytic target
  bool vanishing = true;       ///< omega(0) = 0, i.e. b_1 = 0
  double tolerance = 1e-9;     ///< violation threshold at unit scale
  int threads = 0;             ///< 0: hardware concurrency

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Deterministic 64-bit stream: mt19937_64 seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of trial `index` derived from the run seed.
std::uint64_t trial_seed(std::uint64_t seed, int index);

struct DilatationDraw {
  double k = 0.5;
  int degree = 2;               ///< number of Blaschke zeros; 0 gives k z (or k)
  bool vanishing = true;        ///< include the factor z
  bool real_coefficients = false;
};

/// omega = k * rotation * [z] * B(z) with `degree` zeros drawn in |a| < 0.98.
/// Real coefficients use conjugate pairs, real zeros and rotation +-1.
DilatationSpec draw_dilatation(const DilatationDraw& d, std::uint64_t seed);
TruncatedSeries gen_dilatation(const DilatationDraw& d, std::uint64_t seed, int order);

/// sum w_i z / (1 - 2 t_i z + z^2); weights are normalised to sum 1.
TruncatedSeries robertson_mixture(std::span<const double> t, std::span<const double> w, int order);
/// Random Robertson mixture with `atoms` atoms, t_i uniform in [-1, 1].
TruncatedSeries gen_typically_real_analytic(std::uint64_t seed, int atoms, int order);

/// Analytic map convex in the vertical direction with phi(0) = 0, phi'(0) = 1:
/// z/(1 - e^{i theta} z), -e^{-i theta} log(1 - e^{i theta} z), or the
/// integral of p(z)/(1 - z^2) for a random Herglotz mixture p with p(0) = 1.
struct DirectionConvexDraw {
  TruncatedSeries phi;
  std::string description;
};
DirectionConvexDraw gen_direction_convex_analytic(std::uint64_t seed, int atoms, int order);

struct TrialOutcome {
  int index = 0;
  std::uint64_t seed = 0;
  bool skipped = false;
  std::string skip_reason;
  double worst_margin = 0.0;  ///< min over n and quantity of (bound - value) / max(1, bound)
  int worst_n = 0;
  std::string worst_quantity;
  std::string description;    ///< analytic target and dilatation
};

struct Offender {
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  std::string quantity;  ///< "a", "b", "gap" or "a1"
  double bound = 0.0;
  double value = 0.0;
  std::string description;
};

struct ViolationReport {
  TrialConfig config;
  int trials_run = 0;
  int trials_skipped = 0;
  int violations = 0;
  double worst_margin = 0.0;
  std::map<std::string, int> skip_reasons;
  std::vector<TrialOutcome> outcomes;
  std::vector<Offender> offenders;

  bool ok() const { return violations == 0; }
  nlohmann::json to_json() const;
};

/// Checks one constructed map against the bounds of `family`. The map must
/// already be normalised (h'(0) = 1).
TrialOutcome check_map(const HarmonicMap& f, TrialFamily family, double k, bool vanishing,
                       double tolerance, std::vector<Offender>* offenders = nullptr);

/// Builds, validates and checks a single trial from explicit data.
TrialOutcome run_single(TrialFamily family, const TruncatedSeries& phi, const DilatationSpec& omega,
                        double tolerance = 1e-9);

ViolationReport run_trials(const TrialConfig& cfg);

/// The default suite: every family, k in {0.1, 0.3, 0.5, 0.7, 0.9}, 200 trials, order 32.
std::vector<TrialConfig> default_suite(std::uint64_t seed = 20240601);

/// Bound-versus-extremal rows for n = 2..n_max. Extremals are rebuilt by
/// shearing and affine combination:
///   conjB vs P_k, convex0 vs P, full vs Q_k, convex vs the literal Q, and
///   convex-aligned vs P(k0) + conj(-k P(k0)), which attains C_n and D_n.
bounds::BoundTable attainment_report(int n_max, double k);

}  // namespace qharm::harness
