#pragma once

#include <functional>
#include <string_view>
#include <vector>

namespace qharm::bounds {

/// Polynomial with exact integer coefficients (ascending powers of x).
///
/// Evaluation near x = 1 is done in powers of t = 1 - x, where the auxiliary
/// polynomials of the monotonicity lemmas have high-order zeros; whichever
/// basis has the smaller condition sum at the given point is used.
class ExactPolynomial {
 public:
  using Int = __int128;

  ExactPolynomial() : ExactPolynomial(std::vector<Int>{0}) {}
  explicit ExactPolynomial(std::vector<Int> ascending);

  static ExactPolynomial constant(Int v) { return ExactPolynomial({v}); }
  static ExactPolynomial x() { return ExactPolynomial({0, 1}); }
  static ExactPolynomial one_minus_x() { return ExactPolynomial({1, -1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Int coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Int{0}; }
  /// Coefficients of P(1 - t) in ascending powers of t.
  const std::vector<Int>& shifted_coeffs() const { return shifted_; }

  ExactPolynomial derivative() const;
  /// Exact quotient by (1 - x)^power; throws std::domain_error when the
  /// division leaves a remainder.
  ExactPolynomial divided_by_one_minus_x(int power) const;
  /// Multiplicity of the root at x = 1.
  int root_multiplicity_at_one() const;

  double operator()(double x) const;

  friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
  friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) { return a.c_ == b.c_; }

 private:
  void trim_and_shift();

  std::vector<Int> c_;
  std::vector<Int> shifted_;
};

/// The auxiliary functions behind the monotonicity of the sharp bounds in k.
///
/// Numerators: KoebeNumerator(n) = n^2 + (-2n^2-2n+1)x + (n+1)^2 x^2 - x^{n+1} - x^{n+2},
/// HalfplaneNumerator(n) = n - (n+1)x + x^{n+1}.
/// Scaled bounds: KoebeScaledA = n A(n,x) = KoebeNumerator/(1-x)^3,
/// KoebeScaledB = n B(n,x) = x KoebeNumerator(n-1)/(1-x)^3,
/// HalfplaneScaledA = n a(n,x) = HalfplaneNumerator/(1-x)^2,
/// HalfplaneScaledB = n b(n,x) = x HalfplaneNumerator(n-1)/(1-x)^2.
/// Slopes (numerators of the derivatives of the scaled bounds):
/// KoebeSlope = (1-x)M' + 3M, KoebeCoSlope = x KoebeSlope(n-1) + (1-x) M(n-1),
/// HalfplaneSlope = (1-x)L' + 2L, HalfplaneCoSlope = (1-x)(x L'(n-1) + L(n-1)) + 2x L(n-1).
enum class LemmaFunction {
  KoebeNumerator,
  KoebeSlope,
  KoebeCoSlope,
  HalfplaneNumerator,
  HalfplaneSlope,
  HalfplaneCoSlope,
  KoebeScaledA,
  KoebeScaledB,
  HalfplaneScaledA,
  HalfplaneScaledB,
};

std::string_view to_string(LemmaFunction f);

struct LemmaPoly {
  LemmaFunction function;
  int n;
};

inline constexpr int kMaxLemmaIndex = 100;

/// Exact polynomial behind a lemma function. For the scaled bounds this is the
/// quotient after the exact division by (1-x)^3 or (1-x)^2. Requires
/// 2 <= n <= kMaxLemmaIndex, and n >= 3 for HalfplaneCoSlope.
ExactPolynomial lemma_polynomial(LemmaPoly p);

double lemma_poly_eval(LemmaPoly p, double x);

struct MonotonicityReport {
  int grid = 0;
  int violations = 0;            ///< consecutive pairs with f(x_{i+1}) <= f(x_i)
  double min_forward_difference = 0.0;
  double first_violation_x = 0.0;  ///< NaN when there is none
  double min_value = 0.0;
  double argmin = 0.0;
};

inline constexpr double kScanUpper = 1.0 - 1e-6;

/// Strict-increase scan of f on a uniform grid of `grid` points over [lo, hi].
MonotonicityReport monotonicity_scan(const std::function<double(double)>& f, int grid,
                                     double lo = 0.0, double hi = kScanUpper);
MonotonicityReport monotonicity_scan(LemmaPoly p, int grid, double lo = 0.0, double hi = kScanUpper);

}  // namespace qharm::bounds
