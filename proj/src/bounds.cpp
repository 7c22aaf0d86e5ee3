#include "qharm/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qharm/errors.hpp"

namespace qharm::bounds {

namespace {

void check_args(int n, double k) {
  if (n < 1) throw std::invalid_argument("coefficient index n must be >= 1");
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("dilatation bound k must lie in [0,1)");
}

// 1 + k + ... + k^{n-1}
long double partial_geometric(int n, long double k) {
  long double s = 0.0L, p = 1.0L;
  for (int j = 0; j < n; ++j) {
    s += p;
    p *= k;
  }
  return s;
}

long double ipow(long double x, int e) {
  long double r = 1.0L;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

double koebe_a_geometric_form(int n, double k) {
  check_args(n, k);
  const long double x = k, nn = n, s = 1.0L - x;
  const long double num = s * nn * nn - 2.0L * x * nn + x * (x + 1.0L) * partial_geometric(n, x);
  return static_cast<double>(num / (nn * s * s));
}

double koebe_b_geometric_form(int n, double k) {
  check_args(n, k);
  const long double x = k, nn = n, s = 1.0L - x;
  const long double num = x * s * nn * nn - 2.0L * x * nn + x * (x + 1.0L) * partial_geometric(n, x);
  return static_cast<double>(num / (nn * s * s));
}

double koebe_a_cubic_form(int n, double k) {
  check_args(n, k);
  const long double x = k, nn = n;
  const long double num = nn * nn + (-2.0L * nn * nn - 2.0L * nn + 1.0L) * x +
                          (nn + 1.0L) * (nn + 1.0L) * x * x - ipow(x, n + 1) - ipow(x, n + 2);
  const long double s = 1.0L - x;
  return static_cast<double>(num / (nn * s * s * s));
}

double koebe_b_cubic_form(int n, double k) {
  check_args(n, k);
  const long double x = k, nn = n;
  const long double num = (nn - 1.0L) * (nn - 1.0L) + (-2.0L * nn * nn + 2.0L * nn + 1.0L) * x +
                          nn * nn * x * x - ipow(x, n) - ipow(x, n + 1);
  const long double s = 1.0L - x;
  return static_cast<double>(x * num / (nn * s * s * s));
}

double koebe_b_majorant(int n, double k) {
  check_args(n, k);
  long double s = 0.0L, p = 1.0L;
  for (int m = 1; m < n; ++m) {
    p *= k;
    const long double w = n - m;
    s += p * w * w;
  }
  return static_cast<double>(s / n);
}

double koebe_a(int n, double k) {
  check_args(n, k);
  if (n == 1) return 1.0;
  return n + koebe_b_majorant(n, k);
}

double koebe_b(int n, double k) {
  check_args(n, k);
  if (n == 1) return 0.0;
  return koebe_b_majorant(n, k);
}

double halfplane_a_closed_form(int n, double k) {
  check_args(n, k);
  const double nn = n;
  return (nn - k * (nn + 1.0) + std::pow(k, n + 1)) / (nn * (1.0 - k) * (1.0 - k));
}

double halfplane_b_closed_form(int n, double k) {
  check_args(n, k);
  const double nn = n;
  return k * (nn - 1.0 - nn * k + std::pow(k, n)) / (nn * (1.0 - k) * (1.0 - k));
}

double halfplane_b_majorant(int n, double k) {
  check_args(n, k);
  long double s = 0.0L, p = 1.0L;
  for (int m = 1; m < n; ++m) {
    p *= k;
    s += p * (n - m);
  }
  return static_cast<double>(s / n);
}

double halfplane_a(int n, double k) {
  check_args(n, k);
  if (n == 1) return 1.0;
  return 1.0 + halfplane_b_majorant(n, k);
}

double halfplane_b(int n, double k) {
  check_args(n, k);
  if (n == 1) return 0.0;
  return halfplane_b_majorant(n, k);
}

double k0_of_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("k must lie in [0,1)");
  return 2.0 * k / (1.0 + k * k);
}

double k_of_k0(double k0) {
  if (!(k0 >= 0.0 && k0 < 1.0)) throw std::invalid_argument("k0 must lie in [0,1)");
  return k0 / (1.0 + std::sqrt((1.0 - k0) * (1.0 + k0)));
}

double k_of_k0_literal(double k0) {
  if (!(k0 > 0.0 && k0 < 1.0)) throw std::invalid_argument("k0 must lie in (0,1)");
  return (1.0 - std::sqrt(1.0 - k0 * k0)) / k0;
}

// The lifted bounds are a(n,k0) + k b(n,k0) with k = k_of_k0(k0); since k is
// the caller's own parameter it is used directly rather than recovered from k0.
double lifted_halfplane_a(int n, double k) {
  const double k0 = k0_of_k(k);
  return halfplane_a(n, k0) + k * halfplane_b(n, k0);
}

double lifted_halfplane_b(int n, double k) {
  const double k0 = k0_of_k(k);
  return halfplane_b(n, k0) + k * halfplane_a(n, k0);
}

double lifted_koebe_a(int n, double k) {
  const double k0 = k0_of_k(k);
  return koebe_a(n, k0) + k * koebe_b(n, k0);
}

double lifted_koebe_b(int n, double k) {
  const double k0 = k0_of_k(k);
  return koebe_b(n, k0) + k * koebe_a(n, k0);
}

LimitValues limit_values(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double nn = n;
  return {(2.0 * nn + 1.0) * (nn + 1.0) / 6.0,
          (2.0 * nn - 1.0) * (nn - 1.0) / 6.0,
          (nn + 1.0) / 2.0,
          (nn - 1.0) / 2.0,
          nn,
          (2.0 * nn * nn + 1.0) / 3.0};
}

GeometricSums geometric_sums(int n, double k) {
  check_args(n, k);
  GeometricSums s{};
  double p = 1.0;
  for (int m = 1; m < n; ++m) {
    p *= k;
    s.power_direct += p;
    s.weighted_direct += m * p;
    s.square_weighted_direct += static_cast<double>(m) * m * p;
  }
  const double nn = n;
  const double q = 1.0 - k;
  s.power_closed = k * (1.0 - std::pow(k, n - 1)) / q;
  s.weighted_closed = k / (q * q) * (1.0 - nn * std::pow(k, n - 1) + (nn - 1.0) * std::pow(k, n));
  s.square_weighted_closed =
      k / (q * q * q) *
      (1.0 + k - nn * nn * std::pow(k, n - 1) + (2.0 * nn * nn - 2.0 * nn - 1.0) * std::pow(k, n) -
       (nn - 1.0) * (nn - 1.0) * std::pow(k, n + 1));
  return s;
}

std::string_view to_string(BoundFamily f) {
  switch (f) {
    case BoundFamily::ConjB: return "conjB";
    case BoundFamily::Convex0: return "convex0";
    case BoundFamily::Convex: return "convex";
    case BoundFamily::Full: return "full";
  }
  return "conjB";
}

BoundFamily parse_family(std::string_view s) {
  if (s == "conjB") return BoundFamily::ConjB;
  if (s == "convex0") return BoundFamily::Convex0;
  if (s == "convex") return BoundFamily::Convex;
  if (s == "full") return BoundFamily::Full;
  throw ParseError("unknown bound family '" + std::string(s) + "' (expected conjB|convex0|convex|full)");
}

BoundPair bound(BoundFamily family, int n, double k) {
  switch (family) {
    case BoundFamily::ConjB: return {koebe_a(n, k), koebe_b(n, k)};
    case BoundFamily::Convex0: return {halfplane_a(n, k), halfplane_b(n, k)};
    case BoundFamily::Convex: return {lifted_halfplane_a(n, k), lifted_halfplane_b(n, k)};
    case BoundFamily::Full: return {lifted_koebe_a(n, k), lifted_koebe_b(n, k)};
  }
  throw std::logic_error("unreachable bound family");
}

void BoundTable::write_csv(std::ostream& os) const {
  os << "n,bound,attained,margin,family,k,part,extremal,equality\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g,%s,%.9g,%s,%s,%s\n", r.n, r.bound, r.attained,
                  r.margin, r.family.c_str(), r.k, r.part.c_str(), r.extremal.c_str(), r.equality ? "yes" : "no");
    os << buf;
  }
}

}  // namespace qharm::bounds
