#pragma once

#include <complex>
#include <random>
#include <vector>

#include "qharm/series.hpp"

namespace testutil {

using qharm::Complex;
using qharm::TruncatedSeries;

// Unit-scale random series; c0 is forced to `c0` when given.
inline TruncatedSeries random_series(std::mt19937_64& rng, int order, const Complex* c0 = nullptr) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(order + 1);
  for (auto& x : c) x = Complex(u(rng), u(rng));
  if (c0) c[0] = *c0;
  return TruncatedSeries(std::move(c));
}

// Series whose coefficients decay like r^n, so products stay at unit scale.
inline TruncatedSeries random_decaying(std::mt19937_64& rng, int order, double r, const Complex* c0 = nullptr) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(order + 1);
  double p = 1.0;
  for (auto& x : c) {
    x = Complex(u(rng), u(rng)) * p;
    p *= r;
  }
  if (c0) c[0] = *c0;
  return TruncatedSeries(std::move(c));
}

inline TruncatedSeries koebe(int order) {
  std::vector<Complex> c(order + 1);
  for (int n = 1; n <= order; ++n) c[n] = static_cast<double>(n);
  return TruncatedSeries(std::move(c));
}

inline TruncatedSeries halfplane(int order) {
  return TruncatedSeries::geometric(order) - TruncatedSeries::one(order);
}

}  // namespace testutil
