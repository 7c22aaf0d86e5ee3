#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qharm::bounds {

// Sharp coefficient bounds for K-quasiconformal harmonic maps, k = (K-1)/(K+1).
//
//   koebe_a / koebe_b        A(n,k), B(n,k): starlike, close-to-convex and
//                            typically real maps with b_1 = 0; extremal P_k.
//   halfplane_a / halfplane_b a(n,k), b(n,k): convex maps with b_1 = 0;
//                            extremal is the half-plane shear P.
//   lifted_halfplane_*       C_n(k), D_n(k): convex maps, any b_1.
//   lifted_koebe_*           E_n(k), F_n(k): the three geometric classes, any b_1.
//
// All functions require n >= 1 and k in [0,1) and throw std::invalid_argument
// otherwise. n = 1 returns the normalisation (1, 0).
//
// The bounds themselves are summed from the positive majorants, with
// A = n + B and a = 1 + b. The closed forms divide by powers of (1 - k) and
// are kept for cross-checking.

double koebe_a(int n, double k);
double koebe_b(int n, double k);

/// ((1-k) n^2 - 2kn + k(k+1)(1 + k + ... + k^{n-1})) / (n (1-k)^2)
double koebe_a_geometric_form(int n, double k);
double koebe_b_geometric_form(int n, double k);
/// (n^2 + (-2n^2-2n+1)k + (n+1)^2 k^2 - k^{n+1} - k^{n+2}) / (n (1-k)^3),
/// accumulated in extended precision.
double koebe_a_cubic_form(int n, double k);
double koebe_b_cubic_form(int n, double k);
/// (1/n) sum_{m=1}^{n-1} k^m (n-m)^2: the coefficient majorant of g' for a
/// Koebe-type analytic part and a Schwarz-type dilatation.
double koebe_b_majorant(int n, double k);

double halfplane_a(int n, double k);
double halfplane_b(int n, double k);
/// (n - k(n+1) + k^{n+1}) / (n (1-k)^2)
double halfplane_a_closed_form(int n, double k);
/// k (n - 1 - nk + k^n) / (n (1-k)^2)
double halfplane_b_closed_form(int n, double k);
/// (1/n) sum_{m=1}^{n-1} k^m (n-m)
double halfplane_b_majorant(int n, double k);

/// k0 = 2k / (1 + k^2): the dilatation bound of f0 in f = f0 + conj(b1 f0).
double k0_of_k(double k);
/// Inverse of k0_of_k, (1 - sqrt(1 - k0^2)) / k0, evaluated as
/// k0 / (1 + sqrt(1 - k0^2)); returns 0 at k0 = 0.
double k_of_k0(double k0);
/// The same inverse written literally; loses digits for small k0.
double k_of_k0_literal(double k0);

double lifted_halfplane_a(int n, double k);
double lifted_halfplane_b(int n, double k);
double lifted_koebe_a(int n, double k);
double lifted_koebe_b(int n, double k);

/// Limits as k -> 1^-.
struct LimitValues {
  double koebe_a;        ///< (2n+1)(n+1)/6
  double koebe_b;        ///< (2n-1)(n-1)/6
  double halfplane_a;    ///< (n+1)/2
  double halfplane_b;    ///< (n-1)/2
  double lifted_halfplane;  ///< n, both parts
  double lifted_koebe;      ///< (2n^2+1)/3, both parts
};
LimitValues limit_values(int n);

/// sum_{m=1}^{n-1} k^m, m k^m and m^2 k^m, by closed form and by direct summation.
struct GeometricSums {
  double power_closed, power_direct;
  double weighted_closed, weighted_direct;
  double square_weighted_closed, square_weighted_direct;
};
GeometricSums geometric_sums(int n, double k);

enum class BoundFamily { ConjB, Convex0, Convex, Full };

std::string_view to_string(BoundFamily f);
/// Accepts "conjB", "convex0", "convex", "full". Throws qharm::ParseError.
BoundFamily parse_family(std::string_view s);

struct BoundPair {
  double analytic;
  double coanalytic;
};
BoundPair bound(BoundFamily family, int n, double k);

/// One row of a bound-versus-extremal comparison.
struct BoundRow {
  int n = 0;
  double bound = 0.0;
  double attained = 0.0;
  double margin = 0.0;  ///< bound - attained
  std::string family;   ///< e.g. "conjB"
  double k = 0.0;
  std::string part;     ///< "analytic" or "coanalytic"
  std::string extremal; ///< label of the map whose coefficient is reported
  bool equality = false;
};

struct BoundTable {
  std::vector<BoundRow> rows;

  /// Columns: n,bound,attained,margin,family,k,part,extremal,equality
  /// (9 significant digits).
  void write_csv(std::ostream& os) const;
};

}  // namespace qharm::bounds
