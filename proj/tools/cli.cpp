#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qharm/bounds.hpp"
#include "qharm/catalog.hpp"
#include "qharm/errors.hpp"
#include "qharm/geometry.hpp"
#include "qharm/harness.hpp"
#include "qharm/lemma_poly.hpp"
#include "qharm/serialize.hpp"

namespace qharm::cli {

namespace {

// Raised for flag values that parse but are out of range.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void require_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw UsageError("--k " + g9(k) + " is out of range: need 0 <= k < 1");
}

void require_positive_k(double k) {
  require_k(k);
  if (k == 0.0) throw UsageError("--k must be positive for this command (0 < k < 1)");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  return f;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  auto f = open_out(path);
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

// --- coeffs --------------------------------------------------------------------

struct CoeffsOpts {
  std::string function;
  int n = 8;
  std::string format = "csv";
};

int do_coeffs(const CoeffsOpts& o, std::ostream& out) {
  const CatalogId id = parse_catalog_id(o.function);
  if (o.n < 1) throw UsageError("--n must be >= 1");
  const HarmonicMap f = coefficients(id, o.n);
  if (o.format == "json") {
    out << to_json(f).dump(2) << "\n";
    return kExitOk;
  }
  out << "n,re_a,im_a,re_b,im_b\n";
  for (int n = 1; n <= o.n; ++n) {
    out << n << "," << g9(f.a(n).real()) << "," << g9(f.a(n).imag()) << "," << g9(f.b(n).real()) << ","
        << g9(f.b(n).imag()) << "\n";
  }
  return kExitOk;
}

// --- bounds --------------------------------------------------------------------

struct BoundsOpts {
  std::string family;
  double k = 0.5;
  int n_max = 8;
};

int do_bounds(const BoundsOpts& o, std::ostream& out) {
  const auto family = bounds::parse_family(o.family);
  require_k(o.k);
  if (o.n_max < 2) throw UsageError("--n-max must be >= 2");
  CatalogId extremal;
  switch (family) {
    case bounds::BoundFamily::ConjB: extremal = CatalogId::pk(o.k); break;
    case bounds::BoundFamily::Convex0: extremal = CatalogId::p(o.k); break;
    case bounds::BoundFamily::Convex: extremal = CatalogId::q(o.k); break;
    case bounds::BoundFamily::Full: extremal = CatalogId::qk(o.k); break;
  }
  const HarmonicMap f = coefficients(extremal, o.n_max);
  bounds::BoundTable table;
  for (int n = 2; n <= o.n_max; ++n) {
    const auto b = bounds::bound(family, n, o.k);
    const std::pair<const char*, std::pair<double, double>> parts[] = {
        {"analytic", {b.analytic, std::abs(f.a(n))}}, {"coanalytic", {b.coanalytic, std::abs(f.b(n))}}};
    for (const auto& [part, v] : parts) {
      bounds::BoundRow r;
      r.n = n;
      r.bound = v.first;
      r.attained = v.second;
      r.margin = v.first - v.second;
      r.family = std::string(bounds::to_string(family));
      r.k = o.k;
      r.part = part;
      r.extremal = f.label;
      r.equality = std::abs(r.margin) <= 1e-9 * std::max(1.0, r.bound);
      table.rows.push_back(r);
    }
  }
  table.write_csv(out);
  return kExitOk;
}

// --- verify --------------------------------------------------------------------

struct VerifyOpts {
  std::string family;
  double k = 0.5;
  int trials = 100;
  int order = 32;
  std::uint64_t seed = 1;
  int degree = 2;
  int atoms = 3;
  bool nonvanishing = false;
  int threads = 0;
  std::string out_path;
};

int do_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  harness::TrialConfig cfg;
  cfg.family = harness::parse_trial_family(o.family);
  require_positive_k(o.k);
  cfg.k = o.k;
  cfg.trials = o.trials;
  cfg.order = o.order;
  cfg.seed = o.seed;
  cfg.dilatation_degree = o.degree;
  cfg.atoms = o.atoms;
  cfg.vanishing = !o.nonvanishing;
  cfg.threads = o.threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto report = harness::run_trials(cfg);
  write_or_print(o.out_path, report.to_json().dump(2) + "\n", out);
  err << "trials run " << report.trials_run << ", skipped " << report.trials_skipped << ", violations "
      << report.violations << ", worst margin " << g9(report.worst_margin) << "\n";
  return report.ok() ? kExitOk : kExitViolation;
}

// --- trace ---------------------------------------------------------------------

struct TraceOpts {
  std::string function;
  std::string kind = "slit";
  double radius = 0.999;
  int samples = 2048;
  double c = 1.0;
  double xi_lo = 0.1;
  double xi_hi = 10.0;
  std::string out_path;
  std::string svg_path;
};

int do_trace(const TraceOpts& o, std::ostream& out) {
  const CatalogId id = parse_catalog_id(o.function);
  if (id.kind != CatalogId::Kind::PK) throw UsageError("trace supports pk:<k> only");
  geometry::TraceResult r;
  if (o.kind == "slit") {
    r = geometry::slit_check(id.k, o.samples, o.radius);
  } else if (o.kind == "real") {
    r = geometry::real_axis_trace(id.k, o.samples, o.radius);
  } else if (o.kind == "hyperbola") {
    r = geometry::hyperbola_trace(id.k, o.c, o.xi_lo, o.xi_hi, o.samples);
  } else {
    throw UsageError("--kind must be slit, real or hyperbola");
  }
  if (!o.out_path.empty()) {
    auto f = open_out(o.out_path);
    r.write_csv(f);
  }
  if (!o.svg_path.empty()) {
    auto f = open_out(o.svg_path);
    r.write_svg(f);
  }
  out << r.description << "\n";
  out << "samples " << r.samples.size() << ", residual max " << g9(r.residual_max) << "\n";
  out << "M(k) " << g9(r.slit_endpoint);
  if (o.kind == "slit") {
    out << ", max Re " << g9(r.max_re) << ", slack " << g9(r.slack) << ", max |Im| " << g9(r.max_abs_im);
  }
  out << "\n";
  for (const auto& v : r.verdicts) out << (v.holds ? "ok   " : "FAIL ") << v.claim << "\n";
  return r.all_hold() ? kExitOk : kExitViolation;
}

// --- area ----------------------------------------------------------------------

int do_area(double k, std::ostream& out) {
  require_k(k);
  const auto f = coefficients(CatalogId::f0(k), 2);
  const auto a = geometry::area(f);
  const double lb = geometry::area_lower_bound(k);
  out << "lower bound pi(1-k^2/2) " << g9(lb) << "\n";
  out << "area f0 " << g9(a.value) << "\n";
  out << "difference " << g9(a.value - lb) << "\n";
  return kExitOk;
}

// --- attain --------------------------------------------------------------------

int do_attain(double k, int n_max, std::ostream& out) {
  require_positive_k(k);
  if (n_max < 2) throw UsageError("--n-max must be >= 2");
  harness::attainment_report(n_max, k).write_csv(out);
  return kExitOk;
}

// --- scan ----------------------------------------------------------------------

int do_scan(const std::string& function, int n_max, int grid, std::ostream& out) {
  using bounds::LemmaFunction;
  static constexpr LemmaFunction kAll[] = {
      LemmaFunction::KoebeNumerator,     LemmaFunction::KoebeSlope,     LemmaFunction::KoebeCoSlope,
      LemmaFunction::HalfplaneNumerator, LemmaFunction::HalfplaneSlope, LemmaFunction::HalfplaneCoSlope,
      LemmaFunction::KoebeScaledA,       LemmaFunction::KoebeScaledB,   LemmaFunction::HalfplaneScaledA,
      LemmaFunction::HalfplaneScaledB};
  const LemmaFunction* chosen = nullptr;
  for (const auto& f : kAll) {
    if (bounds::to_string(f) == function) chosen = &f;
  }
  if (!chosen) throw UsageError("unknown lemma function '" + function + "'");
  if (n_max < 2 || n_max > bounds::kMaxLemmaIndex) throw UsageError("--n-max must lie in [2, 100]");
  if (grid < 2) throw UsageError("--grid must be >= 2");
  const int n_lo = *chosen == LemmaFunction::HalfplaneCoSlope ? 3 : 2;
  out << "n,violations,min_forward_difference,min_value,argmin\n";
  int total = 0;
  for (int n = n_lo; n <= n_max; ++n) {
    const auto r = bounds::monotonicity_scan({*chosen, n}, grid);
    total += r.violations;
    out << n << "," << r.violations << "," << g9(r.min_forward_difference) << "," << g9(r.min_value) << ","
        << g9(r.argmin) << "\n";
  }
  return total == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coefficient bounds and extremal maps for quasiconformal harmonic mappings"};
  app.name("qharm");
  app.require_subcommand(1);

  CoeffsOpts coeffs;
  auto* c_cmd = app.add_subcommand("coeffs", "Coefficients of a catalog map");
  c_cmd->add_option("--function", coeffs.function, "koebe-h, pk:K, palpha:K:A, p:K, q:K, qk:K, l, f0:K, gq:B:K:RE[:IM]")
      ->required();
  c_cmd->add_option("--n", coeffs.n, "highest index");
  c_cmd->add_option("--format", coeffs.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  BoundsOpts bnd;
  auto* b_cmd = app.add_subcommand("bounds", "Bound table with the matching extremal");
  b_cmd->add_option("--family", bnd.family, "conjB, convex0, convex or full")->required();
  b_cmd->add_option("--k", bnd.k, "dilatation bound, 0 <= k < 1")->required();
  b_cmd->add_option("--n-max", bnd.n_max, "largest n");

  VerifyOpts ver;
  auto* v_cmd = app.add_subcommand("verify", "Randomised bound check over sheared maps");
  v_cmd->add_option("--family", ver.family, "convex-halfplane, direction-convex or typically-real")->required();
  v_cmd->add_option("--k", ver.k, "dilatation bound, 0 < k < 1")->required();
  v_cmd->add_option("--trials", ver.trials);
  v_cmd->add_option("--order", ver.order);
  v_cmd->add_option("--seed", ver.seed);
  v_cmd->add_option("--degree", ver.degree, "Blaschke zeros per dilatation");
  v_cmd->add_option("--atoms", ver.atoms, "atoms in the analytic mixture");
  v_cmd->add_flag("--nonvanishing", ver.nonvanishing, "omega(0) != 0; checks the lifted bounds");
  v_cmd->add_option("--threads", ver.threads);
  v_cmd->add_option("--out", ver.out_path, "write the JSON report here instead of stdout");

  TraceOpts tr;
  auto* t_cmd = app.add_subcommand("trace", "Boundary, diameter or hyperbola trace of pk:K");
  t_cmd->add_option("--function", tr.function, "pk:K")->required();
  t_cmd->add_option("--kind", tr.kind, "slit, real or hyperbola");
  t_cmd->add_option("--radius", tr.radius, "circle radius (slit) or extent (real)");
  t_cmd->add_option("--samples", tr.samples);
  t_cmd->add_option("--c", tr.c, "hyperbola constant");
  t_cmd->add_option("--xi-lo", tr.xi_lo);
  t_cmd->add_option("--xi-hi", tr.xi_hi);
  t_cmd->add_option("--out", tr.out_path, "CSV output");
  t_cmd->add_option("--svg", tr.svg_path, "SVG plot output");

  double area_k = 0.5;
  auto* a_cmd = app.add_subcommand("area", "Area of z + (k/2) conj(z)^2 against pi(1 - k^2/2)");
  a_cmd->add_option("--k", area_k)->required();

  double attain_k = 0.5;
  int attain_n = 8;
  auto* at_cmd = app.add_subcommand("attain", "Margins of the extremal maps");
  at_cmd->add_option("--k", attain_k)->required();
  at_cmd->add_option("--n-max", attain_n);

  std::string scan_fn;
  int scan_n = 20, scan_grid = 10000;
  auto* s_cmd = app.add_subcommand("scan", "Monotonicity scan of a lemma polynomial");
  s_cmd->add_option("--function", scan_fn, "e.g. koebe-scaled-a, halfplane-slope")->required();
  s_cmd->add_option("--n-max", scan_n);
  s_cmd->add_option("--grid", scan_grid);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*c_cmd) return do_coeffs(coeffs, out);
    if (*b_cmd) return do_bounds(bnd, out);
    if (*v_cmd) return do_verify(ver, out, err);
    if (*t_cmd) return do_trace(tr, out);
    if (*a_cmd) return do_area(area_k, out);
    if (*at_cmd) return do_attain(attain_k, attain_n, out);
    if (*s_cmd) return do_scan(scan_fn, scan_n, scan_grid, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qharm::cli
