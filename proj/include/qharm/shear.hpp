#pragma once

#include <string>

#include "qharm/harmonic_map.hpp"

namespace qharm {

/// Which analytic combination of h and g is prescribed.
///
/// Sum:  h + g = phi, g' = omega h'  =>  h' = phi' / (1 + omega).
///       Used for the half-plane family; with omega = k e^{ia} z the result
///       carries g_n = -b(n,k,a), i.e. -conj(b(n,k,a)) on conj(z)^n.
/// Diff: h - g = phi, g' = omega h'  =>  h' = phi' / (1 - omega).
///       With phi = z/(1-z)^2 and omega = k z this gives the quasiconformal
///       Koebe map with g_n = +B(n,k).
enum class ShearMode { Sum, Diff };

struct ShearProblem {
  TruncatedSeries phi;    ///< phi(0) = 0, phi'(0) = 1
  TruncatedSeries omega;  ///< dilatation, order >= phi.order() - 1
  ShearMode mode = ShearMode::Sum;
};

/// Solves the shear system on derivatives and integrates with h(0) = g(0) = 0.
/// Throws DegenerateDenominator when |1 +- omega(0)| <= 1e-14 and
/// std::invalid_argument when phi is not normalized.
HarmonicMap shear(const ShearProblem& p, std::string label = "shear");

/// max_n |(h +- g - phi)_n| / max(1, |phi_n|).
double shear_residual(const HarmonicMap& f, const ShearProblem& p);

/// The half-plane map with dilatation k e^{i alpha} z:
/// shear(Sum, z/(1-z), k e^{i alpha} z).
HarmonicMap construct_P_alpha(double k, double alpha, int order);

}  // namespace qharm
