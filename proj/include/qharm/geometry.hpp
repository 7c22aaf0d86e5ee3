#pragma once

#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "qharm/catalog.hpp"
#include "qharm/harmonic_map.hpp"

namespace qharm::geometry {

/// Right endpoint M(k) of the omitted slit (-inf, M(k)] of P_k.
/// M(0) = -1/4 and M(k) -> -1/6 as k -> 1. Near k = 1 the displayed formula
/// cancels catastrophically, so an expansion in s = 1 - k is used there.
double slit_endpoint(double k);

struct TraceSample {
  double parameter = 0.0;
  Complex image;
  double residual = 0.0;
};

struct Verdict {
  std::string claim;
  bool holds = false;
};

/// Sampled curve images with per-sample residuals.
struct TraceResult {
  std::string description;
  std::vector<TraceSample> samples;
  double residual_max = 0.0;
  std::vector<Verdict> verdicts;

  // Summary of the slit trace (unused by other traces).
  double slit_endpoint = 0.0;
  double max_re = 0.0;
  double max_abs_im = 0.0;
  double slack = 0.0;  ///< max Re - M(k), as observed

  bool all_hold() const;
  /// Columns: parameter,re,im,residual (9 significant digits).
  void write_csv(std::ostream& os) const;
  /// Static plot of the traced curve, the slit (-inf, M] and a marker at M.
  void write_svg(std::ostream& os) const;
};

inline constexpr double kSlitTolerance = 5e-3;

/// Traces P_k(radius e^{it}) by the closed form for t in [exclude, 2 pi - exclude].
/// Per-sample residual is max(|Im|, Re - M(k), 0). The neighbourhood of t = 0 is
/// excluded because the image there runs off to -infinity along the slit only in
/// the limit r -> 1.
TraceResult slit_check(double k, int samples, double radius,
                       double exclude_angle = std::numbers::pi / 4, double tolerance = kSlitTolerance);

/// P_k on [-extent, extent]: real, strictly increasing and above M(k).
TraceResult real_axis_trace(double k, int samples, double extent = 0.999);

/// Real part u of the image of the hyperbola xi * eta = c at abscissa xi.
double hyperbola_u(double k, double c, double xi);

/// Compares hyperbola_u with P_k((zeta-1)/(zeta+1)), zeta = xi + i c/xi, on a
/// uniform xi grid. Residual is |direct - (u + i c/2)| / max(1, |u|).
TraceResult hyperbola_trace(double k, double c, double xi_lo, double xi_hi, int samples,
                            double tolerance = 1e-8);

struct AreaResult {
  double value = 0.0;      ///< pi sum n (|a_n|^2 - |b_n|^2) over retained terms
  double last_term = 0.0;  ///< size of the final retained term, a tail indicator
};
AreaResult area(const HarmonicMap& f);

/// pi (1 - k^2 / 2), the smallest area for the normalised K-quasiconformal class.
double area_lower_bound(double k);

/// min over `samples` equispaced t of |f(radius e^{it})| using partial sums.
double min_boundary_modulus(const HarmonicMap& f, double radius, int samples);
/// Same probe on the closed form.
double min_boundary_modulus(const CatalogId& id, double radius, int samples);

}  // namespace qharm::geometry
