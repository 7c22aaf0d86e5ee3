#include "qharm/harmonic_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qharm/errors.hpp"
#include "qharm/serialize.hpp"

namespace qharm {

namespace {

constexpr double kDegenerateCutoff = 1e-14;
constexpr double kRealnessTol = 1e-10;
constexpr double kNormalizationTol = 1e-12;

std::string format_complex(Complex c) {
  std::ostringstream os;
  os.precision(9);
  os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

}  // namespace

HarmonicMap::HarmonicMap(TruncatedSeries h_, TruncatedSeries g_, std::string label_,
                         bool normalized_)
    : h(std::move(h_)), g(std::move(g_)), label(std::move(label_)), normalized(normalized_) {
  if (h.order() != g.order()) {
    throw std::invalid_argument("HarmonicMap: h and g must share one order");
  }
  if (normalized && (std::abs(h[0]) > kNormalizationTol ||
                     (h.order() >= 1 && std::abs(h[1] - 1.0) > kNormalizationTol))) {
    throw std::invalid_argument("HarmonicMap '" + label + "' flagged normalized but h(0) != 0 or h'(0) != 1");
  }
}

Complex HarmonicMap::operator()(Complex z) const { return h(z) + std::conj(g(z)); }

// --- DilatationSpec ---------------------------------------------------------

DilatationSpec DilatationSpec::linear(double k, double alpha) {
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("dilatation bound k must lie in [0,1)");
  DilatationSpec s;
  s.kind_ = Kind::Linear;
  s.k_ = k;
  s.alpha_ = alpha;
  s.rotation_ = std::polar(1.0, alpha);
  s.vanishing_ = true;
  return s;
}

DilatationSpec DilatationSpec::blaschke(double k, std::vector<Complex> zeros, Complex rotation,
                                        bool vanishing) {
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("dilatation bound k must lie in [0,1)");
  if (std::abs(std::abs(rotation) - 1.0) > 1e-12) {
    throw std::invalid_argument("Blaschke rotation must be unimodular");
  }
  for (const auto& a : zeros) {
    if (!(std::abs(a) < 1.0)) throw std::invalid_argument("Blaschke zeros must lie in the open disk");
  }
  DilatationSpec s;
  s.kind_ = Kind::Blaschke;
  s.k_ = k;
  s.zeros_ = std::move(zeros);
  s.rotation_ = rotation;
  s.vanishing_ = vanishing;
  return s;
}

bool DilatationSpec::has_real_coefficients() const {
  if (std::abs(rotation_.imag()) > 1e-15) return false;
  // zeros must be closed under conjugation
  std::vector<bool> used(zeros_.size(), false);
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    if (used[i]) continue;
    if (std::abs(zeros_[i].imag()) <= 1e-15) {
      used[i] = true;
      continue;
    }
    bool found = false;
    for (std::size_t j = i + 1; j < zeros_.size(); ++j) {
      if (!used[j] && std::abs(zeros_[j] - std::conj(zeros_[i])) <= 1e-15) {
        used[i] = used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Complex DilatationSpec::operator()(Complex z) const {
  Complex w = k_ * rotation_;
  if (vanishing_) w *= z;
  for (const auto& a : zeros_) w *= (z - a) / (1.0 - std::conj(a) * z);
  return w;
}

TruncatedSeries DilatationSpec::series(int order) const {
  TruncatedSeries w = TruncatedSeries::monomial(order, vanishing_ ? 1 : 0, k_ * rotation_);
  for (const auto& a : zeros_) {
    const Complex num[] = {-a, 1.0};
    const Complex den[] = {1.0, -std::conj(a)};
    w = w * (TruncatedSeries::polynomial(order, num) / TruncatedSeries::polynomial(order, den));
  }
  return w;
}

double DilatationSpec::sampled_sup(double radius, int samples) const {
  double m = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = 2.0 * std::numbers::pi * j / samples;
    m = std::max(m, std::abs((*this)(std::polar(radius, t))));
  }
  return m;
}

std::string DilatationSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::Linear) {
    os << "linear(k=" << k_ << ", alpha=" << alpha_ << ")";
    return os.str();
  }
  os << "blaschke(k=" << k_ << ", rotation=" << format_complex(rotation_)
     << ", vanishing=" << (vanishing_ ? "yes" : "no") << ", zeros=[";
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    if (i) os << ", ";
    os << zeros_[i].real() << (zeros_[i].imag() < 0 ? "-" : "+") << std::abs(zeros_[i].imag()) << "i";
  }
  os << "])";
  return os.str();
}

// --- operations -------------------------------------------------------------

TruncatedSeries dilatation(const HarmonicMap& f) {
  if (f.order() < 1 || std::abs(f.h[1]) <= kDegenerateCutoff) {
    throw DegenerateAnalyticPart("dilatation: |h'(0)| <= 1e-14");
  }
  return f.g.derivative() / f.h.derivative();
}

double jacobian_at(const HarmonicMap& f, Complex z) {
  return std::norm(evaluate_derivative(f.h, z)) - std::norm(evaluate_derivative(f.g, z));
}

double quasiregular_excess(const HarmonicMap& f, double k, std::span<const double> radii,
                           int samples) {
  const TruncatedSeries w = dilatation(f);
  double m = 0.0;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("sample radii must lie in (0,1)");
    for (int j = 0; j < samples; ++j) {
      m = std::max(m, std::abs(w(std::polar(r, 2.0 * std::numbers::pi * j / samples))));
    }
  }
  return m - k;
}

double quasiregular_excess(const DilatationSpec& omega, std::span<const double> radii, int samples) {
  double m = 0.0;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("sample radii must lie in (0,1)");
    m = std::max(m, omega.sampled_sup(r, samples));
  }
  return m - omega.k();
}

HarmonicMap affine_combine(const HarmonicMap& f0, Complex b1) {
  if (!(std::abs(b1) < 1.0)) throw AffineDegenerate("affine_combine: |b1| must be < 1");
  TruncatedSeries h = f0.h + std::conj(b1) * f0.g;
  TruncatedSeries g = f0.g + b1 * f0.h;
  const bool still_normalized =
      f0.normalized && std::abs(h[0]) <= kNormalizationTol &&
      (h.order() < 1 || std::abs(h[1] - 1.0) <= kNormalizationTol);
  return HarmonicMap(std::move(h), std::move(g), f0.label + "+conj(b1*f)[b1=" + format_complex(b1) + "]",
                     still_normalized);
}

HarmonicMap star_to_convex(const HarmonicMap& f) {
  if (std::abs(f.h[0]) > kNormalizationTol) {
    throw std::invalid_argument("star_to_convex: h(0) must vanish");
  }
  std::vector<Complex> hc(f.order() + 1, 0.0), gc(f.order() + 1, 0.0);
  for (int n = 1; n <= f.order(); ++n) {
    hc[n] = f.h[n] / static_cast<double>(n);
    gc[n] = -f.g[n] / static_cast<double>(n);
  }
  return HarmonicMap(TruncatedSeries(std::move(hc)), TruncatedSeries(std::move(gc)),
                     "convex-companion(" + f.label + ")", f.normalized);
}

HarmonicMap rotate(const HarmonicMap& f, double theta) {
  std::vector<Complex> hc(f.order() + 1), gc(f.order() + 1);
  for (int n = 0; n <= f.order(); ++n) {
    hc[n] = f.h[n] * std::polar(1.0, (n - 1) * theta);
    gc[n] = f.g[n] * std::polar(1.0, (n + 1) * theta);
  }
  return HarmonicMap(TruncatedSeries(std::move(hc)), TruncatedSeries(std::move(gc)),
                     f.label, f.normalized);
}

double typically_real_residual(const HarmonicMap& f, int samples) {
  if (!f.h.is_real(kRealnessTol) || !f.g.is_real(kRealnessTol)) {
    throw NonRealCoefficients("typically_real_residual: coefficients are not real");
  }
  const TruncatedSeries* parts[] = {&f.h, &f.g};
  const double r_cap = trusted_radius(parts, 1e-12, 0.95);
  const int radial = std::max(1, static_cast<int>(std::sqrt(samples / 4.0)));
  const int angular = std::max(2, samples / radial);
  double worst = 0.0;
  for (int i = 0; i < radial; ++i) {
    const double r = r_cap * (i + 1) / radial;
    for (int j = 0; j < angular; ++j) {
      const double t = 2.0 * std::numbers::pi * (j + 0.5) / angular;
      const Complex z = std::polar(r, t);
      if (z.imag() == 0.0) continue;
      const double s = z.imag() > 0 ? 1.0 : -1.0;
      worst = std::max(worst, -s * f(z).imag());
    }
  }
  return worst;
}

// --- serialization ----------------------------------------------------------

nlohmann::json to_json(const HarmonicMap& f) {
  auto pack = [](const TruncatedSeries& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : s.coeffs()) arr.push_back({c.real(), c.imag()});
    return arr;
  };
  return {{"version", kHarmonicMapRecordVersion},
          {"label", f.label},
          {"order", f.order()},
          {"normalized", f.normalized},
          {"h_coeffs", pack(f.h)},
          {"g_coeffs", pack(f.g)}};
}

HarmonicMap harmonic_map_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kHarmonicMapRecordVersion) {
      throw ParseError("harmonic map record: unsupported version");
    }
    const int order = j.at("order").get<int>();
    auto unpack = [order](const nlohmann::json& arr) {
      if (!arr.is_array() || static_cast<int>(arr.size()) != order + 1) {
        throw ParseError("harmonic map record: coefficient count does not match order");
      }
      std::vector<Complex> c;
      c.reserve(arr.size());
      for (const auto& p : arr) c.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      return TruncatedSeries(std::move(c));
    };
    return HarmonicMap(unpack(j.at("h_coeffs")), unpack(j.at("g_coeffs")),
                       j.at("label").get<std::string>(), j.value("normalized", true));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("harmonic map record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("harmonic map record: ") + e.what());
  }
}

}  // namespace qharm
