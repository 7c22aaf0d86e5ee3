#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qharm/bounds.hpp"
#include "qharm/errors.hpp"
#include "qharm/lemma_poly.hpp"

using namespace qharm::bounds;
using qharm::ParseError;

TEST_CASE("n = 2 values") {
  CHECK(std::abs(koebe_a(2, 0.5) - 2.25) < 1e-12);
  CHECK(std::abs(koebe_b(2, 0.5) - 0.25) < 1e-12);
  CHECK(std::abs(halfplane_a(2, 0.5) - 1.25) < 1e-12);
  CHECK(std::abs(halfplane_b(2, 0.5) - 0.25) < 1e-12);
  CHECK(std::abs(lifted_halfplane_a(2, 0.5) - 1.6) < 1e-12);
  CHECK(std::abs(lifted_halfplane_b(2, 0.5) - 1.1) < 1e-12);
  CHECK(std::abs(lifted_koebe_a(2, 0.5) - 2.6) < 1e-12);
  CHECK(koebe_a(1, 0.3) == 1.0);
  CHECK(koebe_b(1, 0.3) == 0.0);
}

TEST_CASE("oracle table") {
  for (const auto& row : oracle::kBounds) {
    CAPTURE(row.n);
    CAPTURE(row.k);
    const double tol = 1e-11 * row.koebe_a;
    CHECK(std::abs(koebe_a(row.n, row.k) - row.koebe_a) < tol);
    CHECK(std::abs(koebe_b(row.n, row.k) - row.koebe_b) < tol);
    CHECK(std::abs(halfplane_a(row.n, row.k) - row.half_a) < 1e-11 * row.half_a);
    CHECK(std::abs(halfplane_b(row.n, row.k) - row.half_b) < 1e-11 * row.half_a);
  }
}

TEST_CASE("forms agree") {
  for (int n = 1; n <= 60; ++n) {
    for (double k = 0.0; k < 0.99; k += 0.0625) {
      const double a = koebe_a(n, k);
      CHECK(std::abs(koebe_a_geometric_form(n, k) - a) <= 1e-12 * std::max(1.0, a));
      CHECK(std::abs(koebe_a_cubic_form(n, k) - a) <= 1e-12 * std::max(1.0, a));
      CHECK(std::abs(koebe_b_cubic_form(n, k) - koebe_b(n, k)) <= 1e-12 * std::max(1.0, a));
      CHECK(std::abs(koebe_b_majorant(n, k) - koebe_b(n, k)) <= 1e-12 * std::max(1.0, a));
      CHECK(std::abs(halfplane_b_majorant(n, k) - halfplane_b(n, k)) <= 1e-12 * std::max(1.0, a));
      CHECK(std::abs(koebe_a(n, k) - koebe_b(n, k) - n) <= 1e-12 * std::max(1.0, a));
      CHECK(std::abs(halfplane_a(n, k) - halfplane_b(n, k) - 1.0) <= 1e-12 * n);
    }
  }
}

TEST_CASE("geometric sums") {
  for (int n : {1, 2, 7, 30}) {
    for (double k : {0.0, 0.3, 0.9}) {
      const auto s = geometric_sums(n, k);
      CHECK(s.power_closed == doctest::Approx(s.power_direct).epsilon(1e-12));
      CHECK(s.weighted_closed == doctest::Approx(s.weighted_direct).epsilon(1e-12));
      CHECK(s.square_weighted_closed == doctest::Approx(s.square_weighted_direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("limits") {
  const double k = 1.0 - 1e-6;
  for (int n = 1; n <= 20; ++n) {
    const auto lim = limit_values(n);
    CHECK(std::abs(koebe_a(n, k) - lim.koebe_a) < 1e-4 * n * n * n);
    CHECK(std::abs(koebe_b(n, k) - lim.koebe_b) < 1e-4 * n * n * n);
    CHECK(std::abs(halfplane_a(n, k) - lim.halfplane_a) < 1e-4 * n);
    CHECK(std::abs(halfplane_b(n, k) - lim.halfplane_b) < 1e-4 * n);
    CHECK(std::abs(lifted_halfplane_a(n, k) - lim.lifted_halfplane) < 1e-4 * n);
    CHECK(std::abs(lifted_koebe_a(n, k) - lim.lifted_koebe) < 1e-4 * n * n * n);
  }
  CHECK(limit_values(3).koebe_a == doctest::Approx(28.0 / 6));
}

TEST_CASE("k0 round trip") {
  for (double k = 0.0; k < 0.999; k += 0.01) {
    CHECK(std::abs(k_of_k0(k0_of_k(k)) - k) < 1e-14);
  }
  CHECK(k_of_k0(0.0) == 0.0);
  CHECK(std::abs(k_of_k0_literal(0.8) - 0.5) < 1e-15);
  CHECK(k0_of_k(0.5) == doctest::Approx(0.8));
  // the stable form keeps its digits at small k0
  CHECK(std::abs(k_of_k0(1e-9) - 5e-10) < 1e-24);
}

TEST_CASE("argument checks and families") {
  CHECK_THROWS_AS(koebe_a(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(halfplane_a(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lifted_koebe_b(2, -0.1), std::invalid_argument);
  for (auto f : {BoundFamily::ConjB, BoundFamily::Convex0, BoundFamily::Convex, BoundFamily::Full}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_family("typo"), ParseError);
  const auto b = bound(BoundFamily::Convex, 2, 0.5);
  CHECK(b.analytic == doctest::Approx(1.6));
  CHECK(b.coanalytic == doctest::Approx(1.1));
}

TEST_CASE("bound table csv") {
  BoundTable t;
  t.rows.push_back({2, 1.6, 1.6, 0.0, "convex", 0.5, "analytic", "q-aligned", true});
  std::ostringstream os;
  t.write_csv(os);
  const auto s = os.str();
  CHECK(s.rfind("n,bound,attained,margin,family,k,part,extremal,equality\n", 0) == 0);
  CHECK(s.find("2,1.6,1.6,0,convex,0.5,analytic,q-aligned,") != std::string::npos);
}

TEST_CASE("lemma polynomials") {
  // E_2 = (1-x)^4: the co-slope at n = 2 collapses
  const auto e2 = lemma_polynomial({LemmaFunction::KoebeCoSlope, 2});
  const auto quartic = ExactPolynomial::one_minus_x() * ExactPolynomial::one_minus_x() *
                       ExactPolynomial::one_minus_x() * ExactPolynomial::one_minus_x();
  CHECK(e2 == quartic);
  for (double x = 0.0; x < 1.0; x += 0.05) CHECK(std::abs(e2(x) - std::pow(1 - x, 4)) < 1e-12);

  for (int n = 2; n <= 30; ++n) {
    const auto m = lemma_polynomial({LemmaFunction::KoebeNumerator, n});
    CHECK(m(1.0) == 0.0);
    CHECK(m.root_multiplicity_at_one() >= 3);
    const auto d = lemma_polynomial({LemmaFunction::KoebeSlope, n});
    CHECK(std::abs(d(0.0) - double(n - 1) * (n - 1)) < 1e-12);
    CHECK(std::abs(lemma_poly_eval({LemmaFunction::KoebeScaledA, n}, 0.3) - n * koebe_a(n, 0.3)) <
          1e-10 * n * n);
    CHECK(std::abs(lemma_poly_eval({LemmaFunction::KoebeScaledB, n}, 0.3) - n * koebe_b(n, 0.3)) <
          1e-10 * n * n);
    CHECK(std::abs(lemma_poly_eval({LemmaFunction::HalfplaneScaledA, n}, 0.3) - n * halfplane_a(n, 0.3)) <
          1e-12 * n);
    CHECK(std::abs(lemma_poly_eval({LemmaFunction::HalfplaneScaledB, n}, 0.3) - n * halfplane_b(n, 0.3)) <
          1e-12 * n);
  }
  CHECK(lemma_poly_eval({LemmaFunction::HalfplaneNumerator, 3}, 0.5) == doctest::Approx(1.0625));
  CHECK_THROWS(lemma_polynomial({LemmaFunction::HalfplaneCoSlope, 2}));
  CHECK_THROWS(lemma_polynomial({LemmaFunction::KoebeNumerator, 1}));
  CHECK_THROWS_AS(ExactPolynomial({1, 1}).divided_by_one_minus_x(1), std::domain_error);
}

TEST_CASE("exact polynomial arithmetic") {
  const ExactPolynomial p({1, 2, 3});
  CHECK(p.derivative() == ExactPolynomial({2, 6}));
  CHECK((p - p) == ExactPolynomial());
  CHECK((p * ExactPolynomial::one_minus_x()).divided_by_one_minus_x(1) == p);
  CHECK(p(2.0) == 17.0);
  CHECK(p.shifted_coeffs().front() == 6);
}

TEST_CASE("monotonicity scans") {
  for (auto fn : {LemmaFunction::KoebeScaledA, LemmaFunction::KoebeScaledB, LemmaFunction::HalfplaneScaledA,
                  LemmaFunction::HalfplaneScaledB}) {
    for (int n = 2; n <= 12; ++n) {
      const auto r = monotonicity_scan({fn, n}, 2000);
      CAPTURE(to_string(fn));
      CAPTURE(n);
      CHECK(r.violations == 0);
    }
  }
  const auto dec = monotonicity_scan([](double x) { return -x; }, 100);
  CHECK(dec.violations == 99);
  CHECK(dec.first_violation_x == doctest::Approx(kScanUpper / 99));
  const auto pos = monotonicity_scan({LemmaFunction::KoebeSlope, 10}, 1000);
  CHECK(pos.min_value > 0.0);
}
