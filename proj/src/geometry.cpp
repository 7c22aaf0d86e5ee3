#include "qharm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qharm::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

void check_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("k must lie in [0,1)");
}

void check_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("radius must lie in (0,1)");
}

double finish(TraceResult& r) {
  r.residual_max = 0.0;
  for (const auto& s : r.samples) r.residual_max = std::max(r.residual_max, s.residual);
  return r.residual_max;
}

// M(1 - s) = 1/4 + sum_j c_j s^j, obtained by expanding log(1 - s/2).
double slit_endpoint_near_one(double s) {
  double sum = 0.25, sp = 1.0;
  for (int j = 0; j < 80; ++j) {
    const double c = -4.0 / ((j + 3) * std::ldexp(1.0, j + 3)) + 6.0 / ((j + 2) * std::ldexp(1.0, j + 2)) -
                     2.0 / ((j + 1) * std::ldexp(1.0, j + 1));
    sum += c * sp;
    sp *= s;
  }
  return sum;
}

}  // namespace

double slit_endpoint(double k) {
  check_k(k);
  if (k <= 1e-8) return -0.25 + (1.5 - 2.0 * std::numbers::ln2) * k;
  const double s = 1.0 - k;
  // the series converges like (s/2)^j; the direct form cancels badly as s -> 0
  if (s < 0.5) return slit_endpoint_near_one(s);
  return (k * k + 8.0 * k - 1.0) / (4.0 * s * s) + 2.0 * k * (k + 1.0) / (s * s * s) * std::log1p(-s / 2.0);
}

bool TraceResult::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.holds; });
}

void TraceResult::write_csv(std::ostream& os) const {
  os << "parameter,re,im,residual\n";
  char buf[160];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g\n", s.parameter, s.image.real(), s.image.imag(),
                  s.residual);
    os << buf;
  }
}

void TraceResult::write_svg(std::ostream& os) const {
  double lo_x = slit_endpoint, hi_x = slit_endpoint, lo_y = -0.5, hi_y = 0.5;
  for (const auto& s : samples) {
    if (!std::isfinite(s.image.real()) || !std::isfinite(s.image.imag())) continue;
    lo_x = std::min(lo_x, s.image.real());
    hi_x = std::max(hi_x, s.image.real());
    lo_y = std::min(lo_y, s.image.imag());
    hi_y = std::max(hi_y, s.image.imag());
  }
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y) + 0.1;
  lo_x -= pad;
  hi_x += pad;
  lo_y -= pad;
  hi_y += pad;
  const double size = 600.0;
  const double scale = size / std::max(hi_x - lo_x, hi_y - lo_y);
  auto px = [&](double x) { return (x - lo_x) * scale; };
  auto py = [&](double y) { return (hi_y - y) * scale; };

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n",
                (hi_x - lo_x) * scale, (hi_y - lo_y) * scale);
  os << buf;
  os << "<title>" << description << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"0\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#c33\" stroke-width=\"3\"/>\n",
                py(0.0), px(slit_endpoint), py(0.0));
  os << buf;
  os << "<polyline fill=\"none\" stroke=\"#225\" stroke-width=\"1\" points=\"";
  for (const auto& s : samples) {
    if (!std::isfinite(s.image.real()) || !std::isfinite(s.image.imag())) continue;
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.image.real()), py(s.image.imag()));
    os << buf;
  }
  os << "\"/>\n";
  std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"#c33\"/>\n",
                px(slit_endpoint), py(0.0));
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">M = %.6g</text>\n",
                px(slit_endpoint) + 6.0, py(0.0) - 6.0, slit_endpoint);
  os << buf;
  os << "</svg>\n";
}

TraceResult slit_check(double k, int samples, double radius, double exclude_angle, double tolerance) {
  check_k(k);
  check_radius(radius);
  if (samples < 16) throw std::invalid_argument("slit_check: samples must be >= 16");
  if (!(exclude_angle >= 0.0 && exclude_angle < kPi)) {
    throw std::invalid_argument("slit_check: exclude_angle must lie in [0, pi)");
  }
  const CatalogId id = CatalogId::pk(k);
  const double m = slit_endpoint(k);
  TraceResult r;
  char buf[128];
  std::snprintf(buf, sizeof buf, "pk:%.9g on |z| = %.9g", k, radius);
  r.description = buf;
  r.slit_endpoint = m;
  r.max_re = -std::numeric_limits<double>::infinity();
  const double span = 2.0 * kPi - 2.0 * exclude_angle;
  for (int j = 0; j < samples; ++j) {
    const double t = exclude_angle + span * j / (samples - 1);
    const Complex w = evaluate_closed(id, std::polar(radius, t));
    r.max_re = std::max(r.max_re, w.real());
    r.max_abs_im = std::max(r.max_abs_im, std::abs(w.imag()));
    r.samples.push_back({t, w, std::max({std::abs(w.imag()), w.real() - m, 0.0})});
  }
  finish(r);
  r.slack = r.max_re - m;
  r.verdicts.push_back({"max |Im| <= tolerance", r.max_abs_im <= tolerance});
  r.verdicts.push_back({"max Re <= M(k) + tolerance", r.max_re <= m + tolerance});
  return r;
}

TraceResult real_axis_trace(double k, int samples, double extent) {
  check_k(k);
  if (samples < 2) throw std::invalid_argument("real_axis_trace: samples must be >= 2");
  if (!(extent > 0.0 && extent < 1.0)) throw std::invalid_argument("real_axis_trace: extent must lie in (0,1)");
  const CatalogId id = CatalogId::pk(k);
  const double m = slit_endpoint(k);
  TraceResult r;
  r.description = "pk on the real diameter";
  r.slit_endpoint = m;
  bool increasing = true;
  double inf_re = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) {
    const double x = -extent + 2.0 * extent * j / (samples - 1);
    const Complex w = evaluate_closed(id, x);
    if (!r.samples.empty() && !(w.real() > r.samples.back().image.real())) increasing = false;
    inf_re = std::min(inf_re, w.real());
    r.samples.push_back({x, w, std::abs(w.imag())});
  }
  finish(r);
  r.max_re = r.samples.back().image.real();
  r.verdicts.push_back({"real on the diameter", r.residual_max <= 1e-12});
  r.verdicts.push_back({"strictly increasing", increasing});
  r.verdicts.push_back({"infimum above M(k)", inf_re > m});
  return r;
}

double hyperbola_u(double k, double c, double xi) {
  check_k(k);
  if (!(xi > 0.0)) throw std::invalid_argument("hyperbola_u: xi must be positive");
  const double s = 1.0 - k;
  const double q = c * c / (xi * xi);
  const double base = (1.0 + k + s * xi);
  return (1.0 - 4.0 * k - k * k) / (4.0 * s * s) * (xi * xi - 1.0 - q) +
         k / (s * s) * ((xi - 1.0) * (xi - 1.0) - q) +
         k * (k + 1.0) / (s * s * s) * std::log(base * base / 4.0 + s * s * q / 4.0);
}

TraceResult hyperbola_trace(double k, double c, double xi_lo, double xi_hi, int samples, double tolerance) {
  check_k(k);
  if (c == 0.0) throw std::invalid_argument("hyperbola_trace: c must be nonzero");
  if (!(xi_lo > 0.0 && xi_hi > xi_lo)) throw std::invalid_argument("hyperbola_trace: need 0 < xi_lo < xi_hi");
  if (samples < 2) throw std::invalid_argument("hyperbola_trace: samples must be >= 2");
  const CatalogId id = CatalogId::pk(k);
  TraceResult r;
  char buf[128];
  std::snprintf(buf, sizeof buf, "pk:%.9g on xi eta = %.9g", k, c);
  r.description = buf;
  r.slit_endpoint = slit_endpoint(k);
  bool monotone = true;
  double max_im_err = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double xi = xi_lo + (xi_hi - xi_lo) * j / (samples - 1);
    const Complex zeta(xi, c / xi);
    const Complex w = evaluate_closed(id, (zeta - 1.0) / (zeta + 1.0));
    const double u = hyperbola_u(k, c, xi);
    if (!r.samples.empty() && !(u > r.samples.back().image.real())) monotone = false;
    max_im_err = std::max(max_im_err, std::abs(w.imag() - c / 2.0));
    r.samples.push_back({xi, Complex(u, c / 2.0), std::abs(w - Complex(u, c / 2.0)) / std::max(1.0, std::abs(u))});
  }
  finish(r);
  r.verdicts.push_back({"u formula matches direct evaluation", r.residual_max <= tolerance});
  r.verdicts.push_back({"Im equals c/2", max_im_err <= tolerance});
  r.verdicts.push_back({"u strictly increasing in xi", monotone});
  return r;
}

AreaResult area(const HarmonicMap& f) {
  AreaResult r;
  double sum = 0.0;
  for (int n = 1; n <= f.order(); ++n) {
    const double term = n * (std::norm(f.a(n)) - std::norm(f.b(n)));
    sum += term;
    if (n == f.order()) r.last_term = kPi * std::abs(term);
  }
  r.value = kPi * sum;
  return r;
}

double area_lower_bound(double k) {
  check_k(k);
  return kPi * (1.0 - k * k / 2.0);
}

double min_boundary_modulus(const HarmonicMap& f, double radius, int samples) {
  check_radius(radius);
  if (samples < 1) throw std::invalid_argument("min_boundary_modulus: samples must be >= 1");
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) {
    best = std::min(best, std::abs(f(std::polar(radius, 2.0 * kPi * j / samples))));
  }
  return best;
}

double min_boundary_modulus(const CatalogId& id, double radius, int samples) {
  check_radius(radius);
  if (samples < 1) throw std::invalid_argument("min_boundary_modulus: samples must be >= 1");
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) {
    best = std::min(best, std::abs(evaluate_closed(id, std::polar(radius, 2.0 * kPi * j / samples))));
  }
  return best;
}

}  // namespace qharm::geometry
