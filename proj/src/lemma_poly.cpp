#include "qharm/lemma_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qharm::bounds {

using Int = ExactPolynomial::Int;

namespace {

long double to_ld(Int v) { return static_cast<long double>(v); }

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

ExactPolynomial::ExactPolynomial(std::vector<Int> ascending) : c_(std::move(ascending)) {
  if (c_.empty()) c_.push_back(0);
  trim_and_shift();
}

void ExactPolynomial::trim_and_shift() {
  while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
  const int d = degree();
  shifted_.assign(d + 1, 0);
  // P(1 - t) = sum_i c_i (1 - t)^i, coefficient of t^j is (-1)^j sum_{i>=j} c_i C(i, j)
  for (int j = 0; j <= d; ++j) {
    Int s = 0;
    for (int i = j; i <= d; ++i) s += c_[i] * binomial(i, j);
    shifted_[j] = (j % 2 == 0) ? s : -s;
  }
}

ExactPolynomial ExactPolynomial::derivative() const {
  if (degree() == 0) return constant(0);
  std::vector<Int> d(degree());
  for (int i = 1; i <= degree(); ++i) d[i - 1] = c_[i] * i;
  return ExactPolynomial(std::move(d));
}

ExactPolynomial ExactPolynomial::divided_by_one_minus_x(int power) const {
  std::vector<Int> p = c_;
  for (int step = 0; step < power; ++step) {
    // P = (1 - x) Q  <=>  q_i = p_0 + ... + p_i and p(1) = 0
    Int total = 0;
    for (const auto& v : p) total += v;
    if (total != 0) throw std::domain_error("polynomial is not divisible by (1 - x)");
    if (p.size() == 1) return constant(0);
    std::vector<Int> q(p.size() - 1);
    Int run = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      run += p[i];
      q[i] = run;
    }
    p = std::move(q);
  }
  return ExactPolynomial(std::move(p));
}

int ExactPolynomial::root_multiplicity_at_one() const {
  if (degree() == 0 && c_[0] == 0) return std::numeric_limits<int>::max();
  int m = 0;
  while (m <= degree() && shifted_[m] == 0) ++m;
  return m;
}

double ExactPolynomial::operator()(double xv) const {
  const long double x = xv;
  const long double t = 1.0L - x;
  long double cond_x = 0.0L, cond_t = 0.0L, px = 1.0L, pt = 1.0L;
  for (int i = 0; i <= degree(); ++i) {
    cond_x += std::fabs(to_ld(c_[i])) * px;
    cond_t += std::fabs(to_ld(shifted_[i])) * pt;
    px *= std::fabs(x);
    pt *= std::fabs(t);
  }
  const auto& coeffs = cond_t < cond_x ? shifted_ : c_;
  const long double arg = cond_t < cond_x ? t : x;
  long double acc = 0.0L;
  for (int i = degree(); i >= 0; --i) acc = acc * arg + to_ld(coeffs[i]);
  return static_cast<double>(acc);
}

ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<Int> c(std::max(a.degree(), b.degree()) + 1, 0);
  for (int i = 0; i < static_cast<int>(c.size()); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<Int> c(std::max(a.degree(), b.degree()) + 1, 0);
  for (int i = 0; i < static_cast<int>(c.size()); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<Int> c(a.degree() + b.degree() + 1, 0);
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return ExactPolynomial(std::move(c));
}

std::string_view to_string(LemmaFunction f) {
  switch (f) {
    case LemmaFunction::KoebeNumerator: return "koebe-numerator";
    case LemmaFunction::KoebeSlope: return "koebe-slope";
    case LemmaFunction::KoebeCoSlope: return "koebe-coslope";
    case LemmaFunction::HalfplaneNumerator: return "halfplane-numerator";
    case LemmaFunction::HalfplaneSlope: return "halfplane-slope";
    case LemmaFunction::HalfplaneCoSlope: return "halfplane-coslope";
    case LemmaFunction::KoebeScaledA: return "koebe-scaled-a";
    case LemmaFunction::KoebeScaledB: return "koebe-scaled-b";
    case LemmaFunction::HalfplaneScaledA: return "halfplane-scaled-a";
    case LemmaFunction::HalfplaneScaledB: return "halfplane-scaled-b";
  }
  return "?";
}

namespace {

// n >= 1 is admissible for the building blocks (the co-slopes use index n-1).
ExactPolynomial koebe_numerator(int n) {
  const Int nn = n;
  std::vector<Int> c(n + 3, 0);
  c[0] = nn * nn;
  c[1] = -2 * nn * nn - 2 * nn + 1;
  c[2] += (nn + 1) * (nn + 1);
  c[n + 1] -= 1;
  c[n + 2] -= 1;
  return ExactPolynomial(std::move(c));
}

ExactPolynomial halfplane_numerator(int n) {
  std::vector<Int> c(n + 2, 0);
  c[0] = n;
  c[1] = -(n + 1);
  c[n + 1] += 1;
  return ExactPolynomial(std::move(c));
}

ExactPolynomial koebe_slope(int n) {
  const auto m = koebe_numerator(n);
  return ExactPolynomial::one_minus_x() * m.derivative() + ExactPolynomial::constant(3) * m;
}

ExactPolynomial halfplane_slope(int n) {
  const auto l = halfplane_numerator(n);
  return ExactPolynomial::one_minus_x() * l.derivative() + ExactPolynomial::constant(2) * l;
}

}  // namespace

ExactPolynomial lemma_polynomial(LemmaPoly p) {
  const int n = p.n;
  if (n < 2 || n > kMaxLemmaIndex) {
    throw std::invalid_argument("lemma index n must lie in [2, " + std::to_string(kMaxLemmaIndex) + "]");
  }
  const auto x = ExactPolynomial::x();
  const auto omx = ExactPolynomial::one_minus_x();
  switch (p.function) {
    case LemmaFunction::KoebeNumerator: return koebe_numerator(n);
    case LemmaFunction::KoebeSlope: return koebe_slope(n);
    case LemmaFunction::KoebeCoSlope: return x * koebe_slope(n - 1) + omx * koebe_numerator(n - 1);
    case LemmaFunction::HalfplaneNumerator: return halfplane_numerator(n);
    case LemmaFunction::HalfplaneSlope: return halfplane_slope(n);
    case LemmaFunction::HalfplaneCoSlope: {
      if (n < 3) throw std::invalid_argument("halfplane co-slope requires n >= 3");
      const auto l = halfplane_numerator(n - 1);
      return omx * (x * l.derivative() + l) + ExactPolynomial::constant(2) * x * l;
    }
    case LemmaFunction::KoebeScaledA: return koebe_numerator(n).divided_by_one_minus_x(3);
    case LemmaFunction::KoebeScaledB: return (x * koebe_numerator(n - 1)).divided_by_one_minus_x(3);
    case LemmaFunction::HalfplaneScaledA: return halfplane_numerator(n).divided_by_one_minus_x(2);
    case LemmaFunction::HalfplaneScaledB:
      return (x * halfplane_numerator(n - 1)).divided_by_one_minus_x(2);
  }
  throw std::logic_error("unreachable lemma function");
}

double lemma_poly_eval(LemmaPoly p, double x) { return lemma_polynomial(p)(x); }

MonotonicityReport monotonicity_scan(const std::function<double(double)>& f, int grid, double lo,
                                     double hi) {
  if (grid < 2) throw std::invalid_argument("monotonicity_scan: grid must be >= 2");
  MonotonicityReport r;
  r.grid = grid;
  r.first_violation_x = std::numeric_limits<double>::quiet_NaN();
  r.min_forward_difference = std::numeric_limits<double>::infinity();
  double prev = f(lo);
  r.min_value = prev;
  r.argmin = lo;
  for (int i = 1; i < grid; ++i) {
    const double x = lo + (hi - lo) * i / (grid - 1);
    const double v = f(x);
    const double d = v - prev;
    r.min_forward_difference = std::min(r.min_forward_difference, d);
    if (!(d > 0.0)) {
      if (r.violations == 0) r.first_violation_x = x;
      ++r.violations;
    }
    if (v < r.min_value) {
      r.min_value = v;
      r.argmin = x;
    }
    prev = v;
  }
  return r;
}

MonotonicityReport monotonicity_scan(LemmaPoly p, int grid, double lo, double hi) {
  const auto poly = lemma_polynomial(p);
  return monotonicity_scan([&poly](double x) { return poly(x); }, grid, lo, hi);
}

}  // namespace qharm::bounds
