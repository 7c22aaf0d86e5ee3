#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qharm {

using Complex = std::complex<double>;

/// Value of a partial sum together with the heuristic size of the omitted
/// tail, |c_N| |z|^(N+1) / (1 - |z|). The estimate is infinite for |z| >= 1.
struct SeriesValue {
  Complex value;
  double tail_estimate;
};

/// A germ at the origin, c_0 + c_1 z + ... + c_N z^N, stored densely.
///
/// Every binary operation truncates to the smaller of the two operand orders;
/// nothing is ever extended silently. Values are immutable once built.
class TruncatedSeries {
 public:
  /// Takes ownership of c_0..c_N. Throws std::invalid_argument if empty.
  explicit TruncatedSeries(std::vector<Complex> coeffs);

  static TruncatedSeries zero(int order);
  static TruncatedSeries one(int order);
  static TruncatedSeries monomial(int order, int power, Complex coeff = 1.0);
  /// 1 / (1 - ratio z) = sum ratio^n z^n.
  static TruncatedSeries geometric(int order, Complex ratio = 1.0);
  /// Low-degree polynomial given by ascending coefficients, zero-padded.
  static TruncatedSeries polynomial(int order, std::span<const Complex> ascending);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of z^n; zero for n beyond the retained order.
  Complex operator[](int n) const;
  std::span<const Complex> coeffs() const { return coeffs_; }

  TruncatedSeries truncated(int order) const;

  TruncatedSeries operator-() const;
  TruncatedSeries operator*(Complex scalar) const;

  TruncatedSeries derivative() const;
  /// Antiderivative vanishing at 0; the order grows by one.
  TruncatedSeries integral() const;
  /// Principal logarithm of a series with c_0 = 1, via (log a)' = a'/a.
  TruncatedSeries log_unit() const;
  /// Multiply by z keeping the order (the top coefficient falls off).
  TruncatedSeries shifted_up() const;

  SeriesValue evaluate(Complex z) const;
  Complex operator()(Complex z) const { return evaluate(z).value; }

  double max_abs_coeff() const;
  bool is_real(double tol) const;

 private:
  std::vector<Complex> coeffs_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
/// Cauchy product.
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
/// Long division by back-substitution; throws ZeroConstantTerm when
/// |b_0| <= 1e-14.
TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
inline TruncatedSeries operator*(Complex s, const TruncatedSeries& a) { return a * s; }

/// max_n |a_n - b_n| over the common order.
double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b);

/// Horner evaluation of the derivative without materialising it.
Complex evaluate_derivative(const TruncatedSeries& a, Complex z);

/// Largest radius r <= r_cap at which the tail estimate of every series in
/// `parts` stays below `tol`; used to decide where partial sums are trusted.
double trusted_radius(std::span<const TruncatedSeries* const> parts, double tol,
                      double r_cap = 0.95);

}  // namespace qharm
