#include "qharm/shear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qharm/errors.hpp"

namespace qharm {

HarmonicMap shear(const ShearProblem& p, std::string label) {
  const int order = p.phi.order();
  if (order < 1) throw std::invalid_argument("shear: phi needs order >= 1");
  if (std::abs(p.phi[0]) > 1e-12 || std::abs(p.phi[1] - 1.0) > 1e-12) {
    throw std::invalid_argument("shear: phi must satisfy phi(0) = 0, phi'(0) = 1");
  }
  if (p.omega.order() < order - 1) {
    throw std::invalid_argument("shear: omega order must be at least phi order - 1");
  }
  const TruncatedSeries omega = p.omega.truncated(order - 1);
  const double sign = p.mode == ShearMode::Sum ? 1.0 : -1.0;
  const TruncatedSeries denom = TruncatedSeries::one(order - 1) + sign * omega;
  if (std::abs(denom[0]) <= 1e-14) {
    throw DegenerateDenominator("shear: |1 +- omega(0)| <= 1e-14");
  }
  const TruncatedSeries dh = p.phi.derivative() / denom;
  const TruncatedSeries dg = omega * dh;
  TruncatedSeries h = dh.integral();
  // a non-vanishing omega gives h'(0) = 1 / (1 +- omega(0)) != 1
  const bool normalized = std::abs(h[1] - 1.0) <= 1e-12;
  return HarmonicMap(std::move(h), dg.integral(), std::move(label), normalized);
}

double shear_residual(const HarmonicMap& f, const ShearProblem& p) {
  const TruncatedSeries combo = p.mode == ShearMode::Sum ? f.h + f.g : f.h - f.g;
  double worst = 0.0;
  for (int n = 0; n <= std::min(combo.order(), p.phi.order()); ++n) {
    worst = std::max(worst, std::abs(combo[n] - p.phi[n]) / std::max(1.0, std::abs(p.phi[n])));
  }
  return worst;
}

HarmonicMap construct_P_alpha(double k, double alpha, int order) {
  if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("construct_P_alpha: k must lie in [0,1)");
  // z/(1-z) = geometric - 1
  const TruncatedSeries phi = TruncatedSeries::geometric(order) - TruncatedSeries::one(order);
  const DilatationSpec omega = DilatationSpec::linear(k, alpha);
  std::ostringstream label;
  label.precision(9);
  label << "palpha:" << k << ":" << alpha;
  return shear({phi, omega.series(order), ShearMode::Sum}, label.str());
}

}  // namespace qharm
