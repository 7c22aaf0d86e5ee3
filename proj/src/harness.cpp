#include "qharm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qharm/errors.hpp"

namespace qharm::harness {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroRadius = 0.98;
constexpr double kSoundnessTol = 1e-9;
constexpr double kTypicallyRealTol = 1e-8;

TruncatedSeries koebe_series(int order) {
  std::vector<Complex> c(order + 1);
  for (int n = 1; n <= order; ++n) c[n] = static_cast<double>(n);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries halfplane_series(int order) {
  return TruncatedSeries::geometric(order) - TruncatedSeries::one(order);
}

std::vector<double> random_weights(Rng& rng, int count) {
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log1p(-rng.uniform());
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

// Divides h by h'(0) and g by its conjugate, so that the map becomes
// (1/c) f with c = h'(0); the dilatation only rotates.
HarmonicMap renormalize(const HarmonicMap& f) {
  const Complex c = f.h[1];
  return HarmonicMap(f.h * (1.0 / c), f.g * (1.0 / std::conj(c)), f.label);
}

struct Check {
  std::string quantity;
  int n;
  double bound;
  double value;
};

}  // namespace

std::string_view to_string(TrialFamily f) {
  switch (f) {
    case TrialFamily::ConvexHalfplane: return "convex-halfplane";
    case TrialFamily::DirectionConvex: return "direction-convex";
    case TrialFamily::TypicallyReal: return "typically-real";
  }
  return "?";
}

TrialFamily parse_trial_family(std::string_view s) {
  if (s == "convex-halfplane") return TrialFamily::ConvexHalfplane;
  if (s == "direction-convex") return TrialFamily::DirectionConvex;
  if (s == "typically-real") return TrialFamily::TypicallyReal;
  throw ParseError("unknown trial family '" + std::string(s) +
                   "' (expected convex-halfplane|direction-convex|typically-real)");
}

void TrialConfig::validate() const {
  if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("trial k must lie in (0,1)");
  if (order < 2 || order > 256) throw std::invalid_argument("trial order must lie in [2, 256]");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (dilatation_degree < 1) throw std::invalid_argument("dilatation degree must be >= 1");
  if (atoms < 1) throw std::invalid_argument("atoms must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

// --- randomness --------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, int index) {
  return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(index));
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

// --- generators --------------------------------------------------------------

DilatationSpec draw_dilatation(const DilatationDraw& d, std::uint64_t seed) {
  if (d.degree < 0) throw std::invalid_argument("dilatation degree must be >= 0");
  if (d.degree == 0 && d.vanishing) return DilatationSpec::linear(d.k, 0.0);
  Rng rng(seed);
  std::vector<Complex> zeros;
  Complex rotation;
  if (d.real_coefficients) {
    for (int j = 0; j < d.degree / 2; ++j) {
      const Complex a = std::polar(kZeroRadius * std::sqrt(rng.uniform()), rng.uniform(0.0, kPi));
      zeros.push_back(a);
      zeros.push_back(std::conj(a));
    }
    if (d.degree % 2 == 1) zeros.emplace_back(rng.uniform(-kZeroRadius, kZeroRadius), 0.0);
    rotation = rng.uniform() < 0.5 ? 1.0 : -1.0;
  } else {
    for (int j = 0; j < d.degree; ++j) {
      zeros.push_back(std::polar(kZeroRadius * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * kPi)));
    }
    rotation = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
  }
  return DilatationSpec::blaschke(d.k, std::move(zeros), rotation, d.vanishing);
}

TruncatedSeries gen_dilatation(const DilatationDraw& d, std::uint64_t seed, int order) {
  return draw_dilatation(d, seed).series(order);
}

TruncatedSeries robertson_mixture(std::span<const double> t, std::span<const double> w, int order) {
  if (t.empty() || t.size() != w.size()) throw std::invalid_argument("robertson_mixture: need matching t and w");
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw std::invalid_argument("robertson_mixture: weights must be nonnegative");
    total += x;
  }
  if (!(total > 0.0)) throw std::invalid_argument("robertson_mixture: weights sum to zero");
  std::vector<Complex> c(order + 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] >= -1.0 && t[i] <= 1.0)) throw std::invalid_argument("robertson_mixture: t must lie in [-1, 1]");
    // z/(1 - 2tz + z^2) = sum U_{n-1}(t) z^n
    double prev = 0.0, cur = 1.0;
    for (int n = 1; n <= order; ++n) {
      c[n] += w[i] / total * cur;
      const double next = 2.0 * t[i] * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries gen_typically_real_analytic(std::uint64_t seed, int atoms, int order) {
  if (atoms < 1) throw std::invalid_argument("atoms must be >= 1");
  Rng rng(seed);
  std::vector<double> t(atoms);
  for (auto& x : t) x = rng.uniform(-1.0, 1.0);
  const auto w = random_weights(rng, atoms);
  return robertson_mixture(t, w, order);
}

DirectionConvexDraw gen_direction_convex_analytic(std::uint64_t seed, int atoms, int order) {
  if (atoms < 1) throw std::invalid_argument("atoms must be >= 1");
  Rng rng(seed);
  const int kind = std::min(2, static_cast<int>(rng.uniform() * 3.0));
  std::ostringstream desc;
  desc.precision(17);
  if (kind < 2) {
    const double theta = rng.uniform(0.0, 2.0 * kPi);
    std::vector<Complex> c(order + 1);
    for (int n = 1; n <= order; ++n) {
      c[n] = std::polar(1.0, (n - 1) * theta) / (kind == 0 ? 1.0 : static_cast<double>(n));
    }
    desc << (kind == 0 ? "pole" : "log") << "(theta=" << theta << ")";
    return {TruncatedSeries(std::move(c)), desc.str()};
  }
  // phi' = p / (1 - z^2) with p = sum w_i (1 + e_i z) / (1 - e_i z)
  std::vector<double> theta(atoms);
  for (auto& x : theta) x = rng.uniform(0.0, 2.0 * kPi);
  const auto w = random_weights(rng, atoms);
  const int m = order - 1;
  TruncatedSeries p = TruncatedSeries::zero(m);
  desc << "herglotz(";
  for (int i = 0; i < atoms; ++i) {
    const Complex e = std::polar(1.0, theta[i]);
    p = p + (TruncatedSeries::geometric(m, e) * 2.0 - TruncatedSeries::one(m)) * w[i];
    desc << (i ? ", " : "") << w[i] << "@" << theta[i];
  }
  desc << ")";
  const Complex den[] = {1.0, 0.0, -1.0};
  const TruncatedSeries dphi = p / TruncatedSeries::polynomial(m, den);
  return {dphi.integral(), desc.str()};
}

// --- trials ------------------------------------------------------------------

TrialOutcome check_map(const HarmonicMap& f, TrialFamily family, double k, bool vanishing, double tolerance,
                       std::vector<Offender>* offenders) {
  TrialOutcome out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  std::vector<Check> checks;
  checks.push_back({"a1", 1, 1.0, std::abs(f.a(1))});
  const bool convex = family == TrialFamily::ConvexHalfplane;
  for (int n = 2; n <= f.order(); ++n) {
    bounds::BoundFamily bf;
    if (vanishing) {
      bf = convex ? bounds::BoundFamily::Convex0 : bounds::BoundFamily::ConjB;
    } else {
      bf = convex ? bounds::BoundFamily::Convex : bounds::BoundFamily::Full;
    }
    const auto b = bounds::bound(bf, n, k);
    const double an = std::abs(f.a(n)), bn = std::abs(f.b(n));
    checks.push_back({"a", n, b.analytic, an});
    checks.push_back({"b", n, b.coanalytic, bn});
    if (vanishing) checks.push_back({"gap", n, convex ? 1.0 : static_cast<double>(n), std::abs(an - bn)});
  }
  for (const auto& c : checks) {
    // a_1 = 1 is an equality, not an upper bound
    const double margin = c.quantity == "a1" ? -std::abs(c.value - c.bound) / std::max(1.0, c.bound)
                                             : (c.bound - c.value) / std::max(1.0, c.bound);
    const bool violated = c.quantity == "a1" ? -margin > 1e-12 : margin < -tolerance;
    if (c.quantity != "a1" && margin < out.worst_margin) {
      out.worst_margin = margin;
      out.worst_n = c.n;
      out.worst_quantity = c.quantity;
    }
    if (violated && offenders) offenders->push_back({0, 0, c.n, c.quantity, c.bound, c.value, f.label});
  }
  return out;
}

namespace {

TrialOutcome run_one(TrialFamily family, const TruncatedSeries& phi, const DilatationSpec& omega, double tolerance,
                     const std::string& description, std::vector<Offender>* offenders) {
  TrialOutcome out;
  out.description = description;
  auto skip = [&out](std::string reason) {
    out.skipped = true;
    out.skip_reason = std::move(reason);
    return out;
  };
  if (quasiregular_excess(omega) > kSoundnessTol) return skip("dilatation exceeds k");
  const int order = phi.order();
  const ShearMode mode = family == TrialFamily::TypicallyReal ? ShearMode::Diff : ShearMode::Sum;
  const ShearProblem problem{phi, omega.series(order), mode};
  std::optional<HarmonicMap> built;
  try {
    built.emplace(shear(problem, description));
  } catch (const DegenerateDenominator&) {
    return skip("degenerate shear denominator");
  }
  if (shear_residual(*built, problem) > kSoundnessTol) return skip("shear residual above tolerance");
  if (max_abs_diff(dilatation(*built), omega.series(order - 1)) > kSoundnessTol) {
    return skip("dilatation round trip above tolerance");
  }
  const bool vanishing = std::abs(omega(0.0)) == 0.0;
  HarmonicMap f = vanishing ? *built : renormalize(*built);
  if (family == TrialFamily::TypicallyReal) {
    try {
      if (typically_real_residual(f) > kTypicallyRealTol) return skip("typically-real residual above tolerance");
    } catch (const NonRealCoefficients&) {
      return skip("non-real coefficients");
    }
  }
  const auto checked = check_map(f, family, omega.k(), vanishing, tolerance, offenders);
  out.worst_margin = checked.worst_margin;
  out.worst_n = checked.worst_n;
  out.worst_quantity = checked.worst_quantity;
  return out;
}

struct TrialData {
  TruncatedSeries phi;
  DilatationSpec omega;
  std::string description;
};

TrialData draw_trial(const TrialConfig& cfg, std::uint64_t seed) {
  const std::uint64_t omega_seed = splitmix64(seed ^ 0x6f6d656761ULL);
  const std::uint64_t phi_seed = splitmix64(seed ^ 0x706869ULL);
  const DilatationDraw draw{cfg.k, cfg.dilatation_degree, cfg.vanishing,
                            cfg.family == TrialFamily::TypicallyReal};
  DilatationSpec omega = draw_dilatation(draw, omega_seed);
  switch (cfg.family) {
    case TrialFamily::ConvexHalfplane:
      return {halfplane_series(cfg.order), omega, "halfplane; " + omega.describe()};
    case TrialFamily::DirectionConvex: {
      auto d = gen_direction_convex_analytic(phi_seed, cfg.atoms, cfg.order);
      return {std::move(d.phi), omega, d.description + "; " + omega.describe()};
    }
    case TrialFamily::TypicallyReal:
      return {gen_typically_real_analytic(phi_seed, cfg.atoms, cfg.order), omega,
              "robertson(seed=" + std::to_string(phi_seed) + "); " + omega.describe()};
  }
  throw std::logic_error("unreachable trial family");
}

}  // namespace

TrialOutcome run_single(TrialFamily family, const TruncatedSeries& phi, const DilatationSpec& omega,
                        double tolerance) {
  std::vector<Offender> offenders;
  return run_one(family, phi, omega, tolerance, "single; " + omega.describe(), &offenders);
}

ViolationReport run_trials(const TrialConfig& cfg) {
  cfg.validate();
  ViolationReport report;
  report.config = cfg;
  std::vector<TrialOutcome> outcomes(cfg.trials);
  std::vector<std::vector<Offender>> offenders(cfg.trials);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < cfg.trials; i = next++) {
      const std::uint64_t seed = trial_seed(cfg.seed, i);
      TrialOutcome o;
      try {
        const TrialData d = draw_trial(cfg, seed);
        o = run_one(cfg.family, d.phi, d.omega, cfg.tolerance, d.description, &offenders[i]);
      } catch (const std::exception& e) {
        o = TrialOutcome{};
        o.skipped = true;
        o.skip_reason = std::string("generation failure: ") + e.what();
      }
      o.index = i;
      o.seed = seed;
      for (auto& off : offenders[i]) {
        off.trial = i;
        off.seed = seed;
        off.description = o.description;
      }
      outcomes[i] = std::move(o);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int n_threads = std::min(cfg.trials, cfg.threads > 0 ? cfg.threads : static_cast<int>(hw));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  report.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.trials; ++i) {
    const auto& o = outcomes[i];
    if (o.skipped) {
      ++report.trials_skipped;
      ++report.skip_reasons[o.skip_reason];
    } else {
      ++report.trials_run;
      report.worst_margin = std::min(report.worst_margin, o.worst_margin);
    }
    for (const auto& off : offenders[i]) report.offenders.push_back(off);
  }
  report.violations = static_cast<int>(report.offenders.size());
  if (report.trials_run == 0) report.worst_margin = 0.0;
  report.outcomes = std::move(outcomes);
  return report;
}

nlohmann::json ViolationReport::to_json() const {
  using nlohmann::json;
  json j;
  j["config"] = {{"family", std::string(harness::to_string(config.family))},
                 {"k", config.k},
                 {"order", config.order},
                 {"trials", config.trials},
                 {"seed", config.seed},
                 {"dilatation_degree", config.dilatation_degree},
                 {"atoms", config.atoms},
                 {"vanishing", config.vanishing},
                 {"tolerance", config.tolerance}};
  j["trials_run"] = trials_run;
  j["trials_skipped"] = trials_skipped;
  j["violations"] = violations;
  j["worst_margin"] = worst_margin;
  j["skip_reasons"] = skip_reasons;
  json offs = json::array();
  for (const auto& o : offenders) {
    offs.push_back({{"trial", o.trial},
                    {"seed", o.seed},
                    {"n", o.n},
                    {"quantity", o.quantity},
                    {"bound", o.bound},
                    {"value", o.value},
                    {"description", o.description}});
  }
  j["offenders"] = offs;
  json outs = json::array();
  for (const auto& o : outcomes) {
    json t{{"trial", o.index}, {"seed", o.seed}, {"skipped", o.skipped}};
    if (o.skipped) {
      t["reason"] = o.skip_reason;
    } else {
      t["worst_margin"] = o.worst_margin;
      t["worst_n"] = o.worst_n;
      t["worst_quantity"] = o.worst_quantity;
    }
    t["description"] = o.description;
    outs.push_back(std::move(t));
  }
  j["trials"] = outs;
  return j;
}

std::vector<TrialConfig> default_suite(std::uint64_t seed) {
  std::vector<TrialConfig> suite;
  const TrialFamily families[] = {TrialFamily::ConvexHalfplane, TrialFamily::DirectionConvex,
                                  TrialFamily::TypicallyReal};
  const double ks[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (int f = 0; f < 3; ++f) {
    for (int i = 0; i < 5; ++i) {
      TrialConfig c;
      c.family = families[f];
      c.k = ks[i];
      c.order = 32;
      c.trials = 200;
      c.seed = splitmix64(seed + static_cast<std::uint64_t>(16 * f + i));
      suite.push_back(c);
    }
  }
  return suite;
}

// --- attainment ----------------------------------------------------------------

bounds::BoundTable attainment_report(int n_max, double k) {
  if (n_max < 2) throw std::invalid_argument("attainment_report: n_max must be >= 2");
  if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("attainment_report: k must lie in (0,1)");
  const int order = n_max;
  const double k0 = bounds::k0_of_k(k);

  auto koebe_shear = [order](double kk) {
    return shear({koebe_series(order), DilatationSpec::linear(kk, 0.0).series(order), ShearMode::Diff}, "pk");
  };
  const HarmonicMap pk = koebe_shear(k);
  HarmonicMap p = construct_P_alpha(k, kPi, order);
  p.label = "p";
  HarmonicMap qk = affine_combine(koebe_shear(k0), k);
  qk.label = "qk";
  const HarmonicMap p0 = construct_P_alpha(k0, kPi, order);
  HarmonicMap q = affine_combine(p0, k);
  q.label = "q";
  HarmonicMap q_aligned = affine_combine(p0, -k);
  q_aligned.label = "q-aligned";

  struct Entry {
    std::string family;
    bounds::BoundFamily bf;
    const HarmonicMap* map;
  };
  const Entry entries[] = {
      {"conjB", bounds::BoundFamily::ConjB, &pk},
      {"convex0", bounds::BoundFamily::Convex0, &p},
      {"full", bounds::BoundFamily::Full, &qk},
      {"convex", bounds::BoundFamily::Convex, &q},
      {"convex-aligned", bounds::BoundFamily::Convex, &q_aligned},
  };
  bounds::BoundTable table;
  for (const auto& e : entries) {
    for (int n = 2; n <= n_max; ++n) {
      const auto b = bounds::bound(e.bf, n, k);
      const std::pair<const char*, std::pair<double, double>> parts[] = {
          {"analytic", {b.analytic, std::abs(e.map->a(n))}},
          {"coanalytic", {b.coanalytic, std::abs(e.map->b(n))}}};
      for (const auto& [part, vals] : parts) {
        bounds::BoundRow row;
        row.n = n;
        row.bound = vals.first;
        row.attained = vals.second;
        row.margin = vals.first - vals.second;
        row.family = e.family;
        row.k = k;
        row.part = part;
        row.extremal = e.map->label;
        row.equality = std::abs(row.margin) <= 1e-9 * std::max(1.0, row.bound);
        table.rows.push_back(row);
      }
    }
  }
  return table;
}

}  // namespace qharm::harness
