#include "qharm/catalog.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qharm/bounds.hpp"
#include "qharm/errors.hpp"

namespace qharm {

namespace {

using Kind = CatalogId::Kind;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::string_view what) {
  const std::string s(field);
  if (s.empty()) throw ParseError("missing " + std::string(what));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("bad " + std::string(what) + " '" + s + "'");
  }
  return v;
}

double parse_k(std::string_view field) {
  const double k = parse_number(field, "k");
  if (!(k >= 0.0 && k < 1.0)) {
    throw ParseError("k = " + std::string(field) + " is out of range: need 0 <= k < 1");
  }
  return k;
}

void expect_fields(const std::vector<std::string_view>& parts, std::size_t lo, std::size_t hi,
                   std::string_view text) {
  if (parts.size() < lo || parts.size() > hi) {
    throw ParseError("wrong number of parameters in '" + std::string(text) + "'");
  }
}

bool in_disk(Complex z) { return std::abs(z) < 1.0; }

void require_disk(Complex z) {
  if (!in_disk(z)) throw BranchAmbiguity("closed form evaluated outside the unit disk");
}

Complex checked_log(Complex w) {
  if (!(w.real() > 0.0)) throw BranchAmbiguity("logarithm argument left the right half-plane");
  return std::log(w);
}

// log((1-z)/(1-kz)) on the continuous branch through 0.
Complex koebe_log(double k, Complex z) { return checked_log(1.0 - z) - checked_log(1.0 - k * z); }

Complex pk_h(double k, Complex z) {
  const Complex omz = 1.0 - z;
  const double km1 = k - 1.0;
  return ((km1 * (1.0 - 3.0 * k + 2.0 * k * z) * z) / (omz * omz) + k * (k + 1.0) * koebe_log(k, z)) /
         (km1 * km1 * km1);
}

Complex pk_g(double k, Complex z) {
  const Complex omz = 1.0 - z;
  const double km1 = k - 1.0;
  return k * (((1.0 - k) * (1.0 + k - 2.0 * z) * z) / (omz * omz) + (k + 1.0) * koebe_log(k, z)) /
         (km1 * km1 * km1);
}

struct Parts {
  Complex h, g;
};

Parts palpha_parts(double k, double alpha, Complex z) {
  const Complex c = k * std::polar(1.0, alpha);
  const Complex l1 = z / ((1.0 + c) * (1.0 - z));
  const Complex l2 = c / ((1.0 + c) * (1.0 + c)) * (checked_log(1.0 + c * z) - checked_log(1.0 - z));
  return {l1 + l2, c * l1 - l2};
}

Parts closed_parts(Kind kind, double k, double alpha, Complex z) {
  require_disk(z);
  const Complex omz = 1.0 - z;
  switch (kind) {
    case Kind::HarmonicKoebe: {
      const Complex d = omz * omz * omz;
      return {(z - z * z / 2.0 + z * z * z / 6.0) / d, (z * z / 2.0 + z * z * z / 6.0) / d};
    }
    case Kind::PK: return {pk_h(k, z), pk_g(k, z)};
    case Kind::PAlpha: return palpha_parts(k, alpha, z);
    case Kind::P: return palpha_parts(k, std::numbers::pi, z);
    case Kind::L: return {(z - z * z / 2.0) / (omz * omz), -(z * z / 2.0) / (omz * omz)};
    case Kind::F0: return {z, k / 2.0 * z * z};
    default: break;
  }
  throw std::logic_error("closed_parts: composite kind");
}

Parts affine(Parts f0, Complex b1) { return {f0.h + std::conj(b1) * f0.g, f0.g + b1 * f0.h}; }

HarmonicMap from_laws(int order, std::string label, auto a_of, auto g_of) {
  std::vector<Complex> h(order + 1), g(order + 1);
  h[1] = 1.0;
  for (int n = 2; n <= order; ++n) {
    h[n] = a_of(n);
    g[n] = g_of(n);
  }
  return HarmonicMap(TruncatedSeries(std::move(h)), TruncatedSeries(std::move(g)), std::move(label));
}

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::HarmonicKoebe: return "koebe-h";
    case Kind::PK: return "pk";
    case Kind::PAlpha: return "palpha";
    case Kind::P: return "p";
    case Kind::Q: return "q";
    case Kind::QK: return "qk";
    case Kind::L: return "l";
    case Kind::F0: return "f0";
    case Kind::GeneralQ: return "gq";
  }
  return "?";
}

}  // namespace

std::string CatalogId::to_string() const {
  const std::string name(kind_name(kind));
  switch (kind) {
    case Kind::HarmonicKoebe:
    case Kind::L: return name;
    case Kind::PAlpha: return name + ":" + fmt(k) + ":" + fmt(alpha);
    case Kind::GeneralQ: {
      std::string s = name + ":" + std::string(kind_name(base)) + ":" + fmt(k) + ":" + fmt(b1.real());
      if (b1.imag() != 0.0) s += ":" + fmt(b1.imag());
      return s;
    }
    default: return name + ":" + fmt(k);
  }
}

CatalogId parse_catalog_id(std::string_view text) {
  const auto parts = split(text, ':');
  const auto name = parts[0];
  if (name == "koebe-h") {
    expect_fields(parts, 1, 1, text);
    return CatalogId::harmonic_koebe();
  }
  if (name == "l") {
    expect_fields(parts, 1, 1, text);
    return CatalogId::l();
  }
  if (name == "palpha") {
    expect_fields(parts, 3, 3, text);
    const double k = parse_k(parts[1]);
    const double alpha = parse_number(parts[2], "alpha");
    if (!(alpha >= 0.0 && alpha < 2.0 * std::numbers::pi)) {
      throw ParseError("alpha must satisfy 0 <= alpha < 2 pi");
    }
    return CatalogId::p_alpha(k, alpha);
  }
  if (name == "gq") {
    expect_fields(parts, 4, 5, text);
    Kind base;
    if (parts[1] == "pk") {
      base = Kind::PK;
    } else if (parts[1] == "p") {
      base = Kind::P;
    } else {
      throw ParseError("gq base must be pk or p");
    }
    const double k = parse_k(parts[2]);
    const Complex b1(parse_number(parts[3], "b1"), parts.size() == 5 ? parse_number(parts[4], "b1") : 0.0);
    if (!(std::abs(b1) < 1.0)) throw ParseError("b1 must satisfy |b1| < 1");
    return CatalogId::general_q(base, k, b1);
  }
  static constexpr std::pair<std::string_view, Kind> kOneParam[] = {
      {"pk", Kind::PK}, {"p", Kind::P}, {"q", Kind::Q}, {"qk", Kind::QK}, {"f0", Kind::F0}};
  for (const auto& [key, kind] : kOneParam) {
    if (name == key) {
      expect_fields(parts, 2, 2, text);
      return CatalogId{kind, parse_k(parts[1])};
    }
  }
  throw ParseError("unknown function '" + std::string(text) +
                   "' (expected koebe-h, pk:K, palpha:K:A, p:K, q:K, qk:K, l, f0:K, gq:BASE:K:B1)");
}

Complex halfplane_alpha_a(int n, double k, double alpha) {
  const Complex c = k * std::polar(1.0, alpha);
  const double nn = n;
  const Complex top = nn + (nn + 1.0) * c - std::pow(-1.0, n) * std::pow(c, n + 1);
  return top / (nn * (1.0 + c) * (1.0 + c));
}

Complex halfplane_alpha_b(int n, double k, double alpha) {
  const Complex c = k * std::polar(1.0, alpha);
  const double nn = n;
  const Complex top = (nn - 1.0) * c + nn * c * c + std::pow(-1.0, n) * std::pow(c, n + 1);
  return -top / (nn * (1.0 + c) * (1.0 + c));
}

HarmonicMap coefficients(const CatalogId& id, int order) {
  if (order < 1) throw std::invalid_argument("coefficients: order must be >= 1");
  const double k = id.k;
  const std::string label = id.to_string();
  switch (id.kind) {
    case Kind::HarmonicKoebe:
      return from_laws(order, label, [](int n) { return (n + 1.0) * (2.0 * n + 1.0) / 6.0; },
                       [](int n) { return (n - 1.0) * (2.0 * n - 1.0) / 6.0; });
    case Kind::PK:
      return from_laws(order, label, [k](int n) { return bounds::koebe_a(n, k); },
                       [k](int n) { return bounds::koebe_b(n, k); });
    case Kind::PAlpha:
      return from_laws(order, label, [&id](int n) { return halfplane_alpha_a(n, id.k, id.alpha); },
                       [&id](int n) { return -halfplane_alpha_b(n, id.k, id.alpha); });
    case Kind::P:
      return from_laws(order, label, [k](int n) { return bounds::halfplane_a(n, k); },
                       [k](int n) { return -bounds::halfplane_b(n, k); });
    case Kind::L:
      return from_laws(order, label, [](int n) { return (n + 1.0) / 2.0; },
                       [](int n) { return -(n - 1.0) / 2.0; });
    case Kind::F0: {
      auto f = from_laws(order, label, [](int) { return 0.0; }, [](int) { return 0.0; });
      if (order < 2) return f;
      std::vector<Complex> g(order + 1);
      g[2] = k / 2.0;
      return HarmonicMap(f.h, TruncatedSeries(std::move(g)), label);
    }
    case Kind::Q:
    case Kind::QK: {
      const double k0 = bounds::k0_of_k(k);
      const auto base = coefficients(id.kind == Kind::Q ? CatalogId::p(k0) : CatalogId::pk(k0), order);
      auto f = affine_combine(base, k);
      f.label = label;
      return f;
    }
    case Kind::GeneralQ: {
      auto f = affine_combine(coefficients(CatalogId{id.base, k}, order), id.b1);
      f.label = label;
      return f;
    }
  }
  throw std::logic_error("unreachable catalog kind");
}

Complex evaluate_closed(const CatalogId& id, Complex z) {
  Parts parts{};
  switch (id.kind) {
    case Kind::Q:
    case Kind::QK: {
      const double k0 = bounds::k0_of_k(id.k);
      parts = affine(closed_parts(id.kind == Kind::Q ? Kind::P : Kind::PK, k0, 0.0, z), id.k);
      break;
    }
    case Kind::GeneralQ: parts = affine(closed_parts(id.base, id.k, 0.0, z), id.b1); break;
    default: parts = closed_parts(id.kind, id.k, id.alpha, z); break;
  }
  return parts.h + std::conj(parts.g);
}

HarmonicMap build_general_Q(const HarmonicMap& base, Complex b1) {
  auto f = affine_combine(base, b1);
  f.label = "gq(" + base.label + ", b1=" + fmt(b1.real()) + (b1.imag() != 0.0 ? "," + fmt(b1.imag()) : "") + ")";
  return f;
}

}  // namespace qharm
