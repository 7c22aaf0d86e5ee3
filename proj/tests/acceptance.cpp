// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "qharm/bounds.hpp"
#include "qharm/catalog.hpp"
#include "qharm/geometry.hpp"
#include "qharm/harness.hpp"
#include "qharm/lemma_poly.hpp"
#include "qharm/shear.hpp"
#include "test_util.hpp"

using namespace qharm;
namespace b = qharm::bounds;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Relative to unit scale: absolute below 1, relative above.
double scaled_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

Outcome closed_form_n2() {
  const auto t0 = std::chrono::steady_clock::now();
  const double got[] = {b::koebe_a(2, 0.5),    b::koebe_b(2, 0.5),           b::halfplane_a(2, 0.5),
                        b::halfplane_b(2, 0.5), b::lifted_halfplane_a(2, 0.5), b::lifted_halfplane_b(2, 0.5)};
  const double want[] = {2.25, 0.25, 1.25, 0.25, 1.6, 1.1};
  double err = 0.0;
  for (int i = 0; i < 6; ++i) err = std::max(err, std::abs(got[i] - want[i]));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {err < 1e-12 && secs < 1.0, "max err " + fmt("%.3g", err) + ", " + fmt("%.3g", secs) + " s"};
}

Outcome shear_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const int N = 64;
  double err = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    const auto pk = shear({testutil::koebe(N), TruncatedSeries::monomial(N, 1, k), ShearMode::Diff});
    const auto p = shear({testutil::halfplane(N), TruncatedSeries::monomial(N, 1, -k), ShearMode::Sum});
    for (int n = 1; n <= N; ++n) {
      err = std::max(err, std::abs(pk.a(n) - b::koebe_a(n, k)));
      err = std::max(err, std::abs(pk.b(n) - b::koebe_b(n, k)));
      err = std::max(err, std::abs(p.a(n) - b::halfplane_a(n, k)));
      err = std::max(err, std::abs(p.b(n) + b::halfplane_b(n, k)));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {err < 1e-9 && secs < 10.0, "max abs err " + fmt("%.3g", err) + ", " + fmt("%.3g", secs) + " s"};
}

Outcome identity_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  using b::LemmaFunction;
  double err = 0.0;
  for (int n = 1; n <= 50; ++n) {
    for (int i = 0; i < 100; ++i) {
      const double k = i / 100.0;
      const double A = b::koebe_a(n, k), B = b::koebe_b(n, k), a = b::halfplane_a(n, k), bb = b::halfplane_b(n, k);
      err = std::max(err, scaled_err(b::koebe_a_geometric_form(n, k), b::koebe_a_cubic_form(n, k)));
      err = std::max(err, scaled_err(b::koebe_b_geometric_form(n, k), b::koebe_b_cubic_form(n, k)));
      err = std::max(err, scaled_err(A - B, n));
      err = std::max(err, std::abs(a - bb - 1.0));
      if (n >= 2) {
        err = std::max(err, scaled_err(b::lemma_poly_eval({LemmaFunction::KoebeScaledA, n}, k), n * A));
        err = std::max(err, scaled_err(b::lemma_poly_eval({LemmaFunction::KoebeScaledB, n}, k), n * B));
        err = std::max(err, scaled_err(b::lemma_poly_eval({LemmaFunction::HalfplaneScaledA, n}, k), n * a));
        err = std::max(err, scaled_err(b::lemma_poly_eval({LemmaFunction::HalfplaneScaledB, n}, k), n * bb));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {err < 1e-12 && secs < 5.0, "max scaled err " + fmt("%.3g", err) + ", " + fmt("%.3g", secs) + " s"};
}

Outcome limits() {
  const double k = 1.0 - 1e-6;
  double worst = 0.0;  // largest error as a fraction of its tolerance
  for (int n = 1; n <= 20; ++n) {
    const auto lim = b::limit_values(n);
    const double n3 = double(n) * n * n;
    worst = std::max(worst, std::abs(b::koebe_a(n, k) - lim.koebe_a) / (1e-4 * n3));
    worst = std::max(worst, std::abs(b::koebe_b(n, k) - lim.koebe_b) / (1e-4 * n3));
    worst = std::max(worst, std::abs(b::halfplane_a(n, k) - lim.halfplane_a) / (1e-4 * n));
    worst = std::max(worst, std::abs(b::halfplane_b(n, k) - lim.halfplane_b) / (1e-4 * n));
    worst = std::max(worst, std::abs(b::lifted_halfplane_a(n, k) - lim.lifted_halfplane) / (1e-4 * n));
    worst = std::max(worst, std::abs(b::lifted_halfplane_b(n, k) - lim.lifted_halfplane) / (1e-4 * n));
    worst = std::max(worst, std::abs(b::lifted_koebe_a(n, k) - lim.lifted_koebe) / (1e-4 * n3));
    worst = std::max(worst, std::abs(b::lifted_koebe_b(n, k) - lim.lifted_koebe) / (1e-4 * n3));
  }
  return {worst < 1.0, "worst error / tolerance " + fmt("%.3g", worst)};
}

Outcome lemma_scans() {
  using b::LemmaFunction;
  int violations = 0;
  for (auto fn : {LemmaFunction::KoebeScaledA, LemmaFunction::KoebeScaledB, LemmaFunction::HalfplaneScaledA,
                  LemmaFunction::HalfplaneScaledB}) {
    for (int n = 2; n <= 20; ++n) violations += b::monotonicity_scan({fn, n}, 10000).violations;
  }
  bool slope_ok = true;
  for (int n = 2; n <= 20; ++n) {
    const b::LemmaPoly d{LemmaFunction::KoebeSlope, n};
    const auto scan = b::monotonicity_scan([&](double x) { return b::lemma_poly_eval(d, x); }, 10000);
    slope_ok = slope_ok && scan.min_value > 0.0;
    slope_ok = slope_ok && b::lemma_poly_eval(d, 0.0) == double(n - 1) * (n - 1);
    slope_ok = slope_ok && b::lemma_poly_eval(d, b::kScanUpper) < 1e-3 * n * n;
  }
  double e2_err = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0 * b::kScanUpper;
    e2_err = std::max(e2_err, std::abs(b::lemma_poly_eval({LemmaFunction::KoebeCoSlope, 2}, x) - std::pow(1 - x, 4)));
  }
  const bool pass = violations == 0 && slope_ok && e2_err < 1e-12;
  return {pass, "violations " + std::to_string(violations) + ", slope " + (slope_ok ? "ok" : "bad") +
                    ", E_2 err " + fmt("%.3g", e2_err)};
}

Outcome geometry_checks() {
  const double m0 = geometry::slit_endpoint(0.0);
  const double near_one = std::abs(geometry::slit_endpoint(1.0 - 1e-3) + 1.0 / 6);
  const auto slit = geometry::slit_check(0.5, 4096, 0.999);
  const double m = geometry::slit_endpoint(0.5);
  const auto hyp = geometry::hyperbola_trace(0.5, 1.0, 0.1, 10.0, 2048);
  const bool pass = m0 == -0.25 && near_one < 1e-2 && slit.max_abs_im < 5e-3 && slit.max_re <= m + 5e-3 &&
                    hyp.residual_max < 1e-8;
  return {pass, "M(0) " + fmt("%.17g", m0) + ", |M(0.999)+1/6| " + fmt("%.3g", near_one) + ", max|Im| " +
                    fmt("%.3g", slit.max_abs_im) + ", max Re - M " + fmt("%.3g", slit.max_re - m) +
                    ", hyperbola residual " + fmt("%.3g", hyp.residual_max)};
}

Outcome area_checks() {
  double err = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    const auto f = coefficients(CatalogId::f0(k), 4);
    const double base = geometry::area(f).value;
    err = std::max(err, std::abs(base - geometry::area_lower_bound(k)));
    for (double t : {0.5, 1.0, 2.5, 4.0}) err = std::max(err, std::abs(geometry::area(rotate(f, t)).value - base));
  }
  return {err < 1e-12, "max err " + fmt("%.3g", err)};
}

Outcome harness_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string first, second;
  int violations = 0, run = 0, skipped = 0;
  for (int pass = 0; pass < 2; ++pass) {
    std::string& dump = pass == 0 ? first : second;
    for (const auto& cfg : harness::default_suite()) {
      const auto r = harness::run_trials(cfg);
      dump += r.to_json().dump() + "\n";
      if (pass == 0) {
        violations += r.violations;
        run += r.trials_run;
        skipped += r.trials_skipped;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool identical = first == second;
  return {violations == 0 && identical && secs < 120.0,
          "run " + std::to_string(run) + ", skipped " + std::to_string(skipped) + ", violations " +
              std::to_string(violations) + ", identical " + (identical ? "yes" : "no") + ", " +
              fmt("%.3g", secs) + " s for two passes"};
}

Outcome attainment() {
  double tight = 0.0, q_err = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    const double k0 = b::k0_of_k(k);
    for (const auto& row : harness::attainment_report(32, k).rows) {
      if (row.family == "convex") {
        // analytic: |a - k b| against a + k b; co-analytic: |k a - b| against k a + b
        const double a0 = b::halfplane_a(row.n, k0), b0 = b::halfplane_b(row.n, k0);
        const double predicted = row.part == "analytic" ? 2 * k * b0 : std::min(2 * b0, 2 * k * a0);
        q_err = std::max(q_err, std::abs(row.margin - predicted));
      } else if (row.family != "convex-aligned") {
        tight = std::max(tight, std::abs(row.margin));
      }
    }
  }
  return {tight < 1e-9 && q_err < 1e-9,
          "extremal margin " + fmt("%.3g", tight) + ", literal Q margin vs 2k b(n,k0) and its co-analytic analogue " + fmt("%.3g", q_err)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 closed-form values at n = 2", closed_form_n2},
      {"AC2 shear reproduces the coefficient laws", shear_oracle},
      {"AC3 dual forms and identities on the grid", identity_grid},
      {"AC4 limits as k -> 1", limits},
      {"AC5 monotonicity scans and slope polynomial", lemma_scans},
      {"AC6 slit endpoint, slit trace and hyperbola", geometry_checks},
      {"AC7 area and rotation invariance", area_checks},
      {"AC8 default harness suite", harness_suite},
      {"AC9 attainment margins", attainment},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s (%s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
