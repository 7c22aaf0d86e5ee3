#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qharm/bounds.hpp"
#include "qharm/errors.hpp"
#include "qharm/harness.hpp"
#include "test_util.hpp"

using namespace qharm;
using namespace qharm::harness;

TEST_CASE("rng is deterministic") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.next() != c.next());
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(7, 3) == trial_seed(7, 3));
  CHECK(splitmix64(0) != 0);
}

TEST_CASE("family names") {
  for (auto f : {TrialFamily::ConvexHalfplane, TrialFamily::DirectionConvex, TrialFamily::TypicallyReal}) {
    CHECK(parse_trial_family(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_trial_family("convex"), ParseError);
}

TEST_CASE("config validation") {
  TrialConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.k = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.k = 0.5;
  cfg.order = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.order = 32;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("generated dilatations respect k") {
  for (bool real : {false, true}) {
    for (int degree : {0, 1, 3}) {
      for (std::uint64_t s = 1; s <= 20; ++s) {
        const auto w = draw_dilatation({0.6, degree, true, real}, s);
        CHECK(quasiregular_excess(w) <= 1e-12);
        CHECK(std::abs(w(0.0)) == 0.0);
        if (real) CHECK(w.has_real_coefficients());
      }
    }
  }
  const auto w = draw_dilatation({0.6, 2, false, false}, 5);
  CHECK(std::abs(w(0.0)) > 0.0);
  CHECK(max_abs_diff(gen_dilatation({0.6, 2, true, false}, 9, 20), draw_dilatation({0.6, 2, true, false}, 9).series(20)) ==
        0.0);
}

TEST_CASE("typically real analytic targets") {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    const auto phi = gen_typically_real_analytic(s, 3, 40);
    CHECK(std::abs(phi[1] - 1.0) < 1e-14);
    CHECK(phi.is_real(0.0));
    for (int n = 1; n <= 40; ++n) CHECK(std::abs(phi[n]) <= n + 1e-12);
  }
  const double t[] = {1.0};
  const double w[] = {2.0};
  const auto koebe = robertson_mixture(t, w, 20);
  CHECK(max_abs_diff(koebe, testutil::koebe(20)) < 1e-14);
}

TEST_CASE("direction convex targets") {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    const auto d = gen_direction_convex_analytic(s, 3, 40);
    CHECK(std::abs(d.phi[1] - 1.0) < 1e-13);
    CHECK(std::abs(d.phi[0]) == 0.0);
    CHECK_FALSE(d.description.empty());
    for (int n = 1; n <= 40; ++n) CHECK(std::abs(d.phi[n]) <= n + 1e-12);
  }
}

TEST_CASE("extremal trials sit on the bound") {
  const int N = 32;
  const auto pk = run_single(TrialFamily::TypicallyReal, testutil::koebe(N), DilatationSpec::linear(0.5, 0.0));
  CHECK_FALSE(pk.skipped);
  CHECK(std::abs(pk.worst_margin) < 1e-10);
  const auto p =
      run_single(TrialFamily::ConvexHalfplane, testutil::halfplane(N), DilatationSpec::linear(0.5, std::numbers::pi));
  CHECK_FALSE(p.skipped);
  CHECK(std::abs(p.worst_margin) < 1e-10);
}

TEST_CASE("check_map flags violations") {
  const auto koebe_h = HarmonicMap(testutil::koebe(10) * 1.0, testutil::koebe(10) * 0.5, "fake");
  std::vector<Offender> off;
  const auto out = check_map(koebe_h, TrialFamily::ConvexHalfplane, 0.3, true, 1e-9, &off);
  CHECK(out.worst_margin < 0.0);
  CHECK_FALSE(off.empty());
}

TEST_CASE("runs are reproducible and thread independent") {
  TrialConfig cfg;
  cfg.family = TrialFamily::DirectionConvex;
  cfg.k = 0.7;
  cfg.trials = 40;
  cfg.seed = 99;
  cfg.threads = 1;
  const auto one = run_trials(cfg).to_json().dump();
  cfg.threads = 3;
  const auto three = run_trials(cfg).to_json().dump();
  CHECK(one == three);
  CHECK(run_trials(cfg).to_json().dump() == three);
  cfg.seed = 100;
  CHECK(run_trials(cfg).to_json().dump() != three);
}

TEST_CASE("every family passes a short run") {
  for (auto fam : {TrialFamily::ConvexHalfplane, TrialFamily::DirectionConvex, TrialFamily::TypicallyReal}) {
    for (bool vanishing : {true, false}) {
      TrialConfig cfg;
      cfg.family = fam;
      cfg.k = 0.6;
      cfg.trials = 30;
      cfg.vanishing = vanishing;
      const auto r = run_trials(cfg);
      CAPTURE(to_string(fam));
      CAPTURE(vanishing);
      CHECK(r.ok());
      CHECK(r.trials_run + r.trials_skipped == 30);
      CHECK(r.trials_run >= 20);
    }
  }
}

TEST_CASE("default suite layout") {
  const auto suite = default_suite();
  CHECK(suite.size() == 15);
  for (const auto& c : suite) {
    CHECK(c.trials == 200);
    CHECK(c.order == 32);
  }
}

TEST_CASE("attainment report") {
  const auto t = attainment_report(12, 0.5);
  const double k0 = bounds::k0_of_k(0.5);
  int q_rows = 0;
  for (const auto& row : t.rows) {
    if (row.family == "convex") {
      ++q_rows;
      // |a - k b| against a + k b; |k a - b| against k a + b
      const double a0 = bounds::halfplane_a(row.n, k0), b0 = bounds::halfplane_b(row.n, k0);
      const double gap = row.part == "analytic" ? 2 * 0.5 * b0 : std::min(2 * b0, 2 * 0.5 * a0);
      CHECK(std::abs(row.margin - gap) < 1e-9);
    } else {
      CHECK(std::abs(row.margin) < 1e-9);
      CHECK(row.equality);
    }
  }
  CHECK(q_rows == 2 * 11);
}
