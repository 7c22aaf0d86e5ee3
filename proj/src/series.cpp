#include "qharm/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qharm/errors.hpp"

namespace qharm {

namespace {

constexpr double kZeroConstantCutoff = 1e-14;
constexpr double kUnitConstantTol = 1e-12;

void require_order(int order) {
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries needs at least c_0");
}

TruncatedSeries TruncatedSeries::zero(int order) {
  require_order(order);
  return TruncatedSeries(std::vector<Complex>(order + 1, 0.0));
}

TruncatedSeries TruncatedSeries::one(int order) { return monomial(order, 0, 1.0); }

TruncatedSeries TruncatedSeries::monomial(int order, int power, Complex coeff) {
  require_order(order);
  std::vector<Complex> c(order + 1, 0.0);
  if (power >= 0 && power <= order) c[power] = coeff;
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::geometric(int order, Complex ratio) {
  require_order(order);
  std::vector<Complex> c(order + 1);
  Complex p = 1.0;
  for (auto& x : c) {
    x = p;
    p *= ratio;
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::polynomial(int order, std::span<const Complex> ascending) {
  require_order(order);
  std::vector<Complex> c(order + 1, 0.0);
  for (std::size_t i = 0; i < ascending.size() && i < c.size(); ++i) c[i] = ascending[i];
  return TruncatedSeries(std::move(c));
}

Complex TruncatedSeries::operator[](int n) const {
  if (n < 0 || n > order()) return 0.0;
  return coeffs_[n];
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
  if (new_order < 0 || new_order > order()) {
    throw std::invalid_argument("truncated(): order " + std::to_string(new_order) +
                                " outside [0, " + std::to_string(order()) + "]");
  }
  return TruncatedSeries(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
}

TruncatedSeries TruncatedSeries::operator-() const { return *this * Complex(-1.0); }

TruncatedSeries TruncatedSeries::operator*(Complex scalar) const {
  std::vector<Complex> c(coeffs_);
  for (auto& x : c) x *= scalar;
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::derivative() const {
  if (order() == 0) return zero(0);
  std::vector<Complex> c(order());
  for (int n = 0; n < order(); ++n) c[n] = static_cast<double>(n + 1) * coeffs_[n + 1];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::integral() const {
  std::vector<Complex> c(order() + 2, 0.0);
  for (int n = 1; n <= order() + 1; ++n) c[n] = coeffs_[n - 1] / static_cast<double>(n);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::log_unit() const {
  if (std::abs(coeffs_[0] - 1.0) > kUnitConstantTol) {
    throw NonUnitConstantTerm("log_unit(): constant term must be 1");
  }
  if (order() == 0) return zero(0);
  return (derivative() / truncated(order() - 1)).integral();
}

TruncatedSeries TruncatedSeries::shifted_up() const {
  std::vector<Complex> c(coeffs_.size(), 0.0);
  for (std::size_t n = 1; n < c.size(); ++n) c[n] = coeffs_[n - 1];
  return TruncatedSeries(std::move(c));
}

SeriesValue TruncatedSeries::evaluate(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  const double r = std::abs(z);
  double tail = std::numeric_limits<double>::infinity();
  if (r < 1.0) tail = std::abs(coeffs_.back()) * std::pow(r, order() + 1) / (1.0 - r);
  return {acc, tail};
}

double TruncatedSeries::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& x : coeffs_) m = std::max(m, std::abs(x));
  return m;
}

bool TruncatedSeries::is_real(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [tol](const Complex& x) { return std::abs(x.imag()) <= tol; });
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<Complex> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = a[i] + b[i];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<Complex> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = a[i] - b[i];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int n = std::min(a.order(), b.order());
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  std::vector<Complex> c(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j <= i; ++j) s += ac[j] * bc[i - j];
    c[i] = s;
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  const Complex b0 = b[0];
  if (std::abs(b0) <= kZeroConstantCutoff) {
    throw ZeroConstantTerm("series division: divisor has |c_0| <= 1e-14");
  }
  const int n = std::min(a.order(), b.order());
  const auto bc = b.coeffs();
  std::vector<Complex> c(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    Complex s = a[i];
    for (int j = 1; j <= i; ++j) s -= bc[j] * c[i - j];
    c[i] = s / b0;
  }
  return TruncatedSeries(std::move(c));
}

double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int n = std::min(a.order(), b.order());
  double m = 0.0;
  for (int i = 0; i <= n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Complex evaluate_derivative(const TruncatedSeries& a, Complex z) {
  Complex acc = 0.0;
  for (int n = a.order(); n >= 1; --n) acc = acc * z + static_cast<double>(n) * a[n];
  return acc;
}

double trusted_radius(std::span<const TruncatedSeries* const> parts, double tol, double r_cap) {
  auto tail = [&](double r) {
    double t = 0.0;
    for (const auto* s : parts) {
      const int n = s->order();
      const double c = std::max(std::abs((*s)[n]), std::abs((*s)[n - 1]));
      t = std::max(t, c * std::pow(r, n + 1) / (1.0 - r));
    }
    return t;
  };
  if (tail(r_cap) <= tol) return r_cap;
  double lo = 0.0;
  double hi = r_cap;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) <= tol ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace qharm
