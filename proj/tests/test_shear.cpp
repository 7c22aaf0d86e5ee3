#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qharm/bounds.hpp"
#include "qharm/catalog.hpp"
#include "qharm/errors.hpp"
#include "qharm/shear.hpp"
#include "test_util.hpp"

using namespace qharm;

TEST_CASE("diff shear of the Koebe function gives the sharp laws") {
  const int N = 48;
  for (double k : {0.0, 0.2, 0.5, 0.8}) {
    const ShearProblem p{testutil::koebe(N), TruncatedSeries::monomial(N, 1, k), ShearMode::Diff};
    const auto f = shear(p);
    CHECK(shear_residual(f, p) < 1e-13);
    for (int n = 1; n <= N; ++n) {
      const double a = bounds::koebe_a(n, k), b = bounds::koebe_b(n, k);
      CHECK(std::abs(f.a(n) - a) <= 1e-11 * a);
      CHECK(std::abs(f.b(n) - b) <= 1e-11 * std::max(1.0, b));
    }
  }
}

TEST_CASE("sum shear of the half-plane map") {
  const int N = 48;
  const double k = 0.6;
  const ShearProblem p{testutil::halfplane(N), TruncatedSeries::monomial(N, 1, -k), ShearMode::Sum};
  const auto f = shear(p);
  for (int n = 1; n <= N; ++n) {
    CHECK(std::abs(f.a(n) - bounds::halfplane_a(n, k)) < 1e-12);
    CHECK(std::abs(f.b(n) + bounds::halfplane_b(n, k)) < 1e-12);
  }
  // a_n - b_n = 1 in modulus terms
  for (int n = 1; n <= N; ++n) CHECK(std::abs(std::abs(f.a(n)) - std::abs(f.b(n)) - 1.0) < 1e-12);
}

TEST_CASE("P_alpha matches its coefficient law") {
  for (double alpha : {0.0, 0.7, std::numbers::pi, 4.0}) {
    const auto f = construct_P_alpha(0.45, alpha, 30);
    for (int n = 1; n <= 30; ++n) {
      CHECK(std::abs(f.a(n) - halfplane_alpha_a(n, 0.45, alpha)) < 1e-12);
      CHECK(std::abs(f.b(n) + halfplane_alpha_b(n, 0.45, alpha)) < 1e-12);
    }
  }
}

TEST_CASE("P_alpha series agrees with the closed form") {
  const auto f = construct_P_alpha(0.5, 2.0, 200);
  const auto id = CatalogId::p_alpha(0.5, 2.0);
  for (double t = 0.1; t < 6.2; t += 0.5) {
    const Complex z = std::polar(0.7, t);
    CHECK(std::abs(f(z) - evaluate_closed(id, z)) < 1e-12);
  }
}

TEST_CASE("shear errors") {
  const int N = 8;
  const ShearProblem minus_one{testutil::halfplane(N), TruncatedSeries::one(N) * -1.0, ShearMode::Sum};
  CHECK_THROWS_AS(shear(minus_one), DegenerateDenominator);
  const ShearProblem plus_one{testutil::koebe(N), TruncatedSeries::one(N), ShearMode::Diff};
  CHECK_THROWS_AS(shear(plus_one), DegenerateDenominator);
  const ShearProblem bad_phi{testutil::koebe(N) * 2.0, TruncatedSeries::zero(N), ShearMode::Diff};
  CHECK_THROWS_AS(shear(bad_phi), std::invalid_argument);
}

TEST_CASE("non vanishing omega leaves h'(0) unnormalized") {
  const int N = 12;
  const ShearProblem p{testutil::halfplane(N), TruncatedSeries::one(N) * 0.3, ShearMode::Sum};
  const auto f = shear(p);
  CHECK_FALSE(f.normalized);
  CHECK(std::abs(f.a(1) - 1.0 / 1.3) < 1e-15);
  CHECK(std::abs(f.b(1) - 0.3 / 1.3) < 1e-15);
  CHECK(shear_residual(f, p) < 1e-14);
}
