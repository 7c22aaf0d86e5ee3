#pragma once

#include <string>
#include <string_view>

#include "qharm/harmonic_map.hpp"

namespace qharm {

/// Named maps with known coefficient laws.
///
///   HarmonicKoebe  the harmonic Koebe function, a_n = (n+1)(2n+1)/6, b_n = (n-1)(2n-1)/6
///   PK(k)          quasiconformal Koebe map, a_n = A(n,k), b_n = B(n,k)
///   PAlpha(k, a)   half-plane shear with dilatation k e^{ia} z, g_n = -b(n,k,a)
///   P(k)           PAlpha at a = pi, a_n = a(n,k), g_n = -b(n,k)
///   Q(k)           P(k0) + conj(k P(k0)) with k0 = 2k/(1+k^2), taken literally
///   QK(k)          PK(k0) + conj(k PK(k0))
///   L              half-plane harmonic map, a_n = (n+1)/2, g_n = -(n-1)/2
///   F0(k)          z + (k/2) conj(z)^2
///   GeneralQ       base + conj(b1 base) for a base in {PK, P} and any |b1| < 1
struct CatalogId {
  enum class Kind { HarmonicKoebe, PK, PAlpha, P, Q, QK, L, F0, GeneralQ };

  Kind kind = Kind::HarmonicKoebe;
  double k = 0.0;
  double alpha = 0.0;
  Kind base = Kind::P;  ///< GeneralQ only
  Complex b1 = 0.0;     ///< GeneralQ only

  static CatalogId harmonic_koebe() { return {Kind::HarmonicKoebe}; }
  static CatalogId pk(double k) { return {Kind::PK, k}; }
  static CatalogId p_alpha(double k, double alpha) { return {Kind::PAlpha, k, alpha}; }
  static CatalogId p(double k) { return {Kind::P, k}; }
  static CatalogId q(double k) { return {Kind::Q, k}; }
  static CatalogId qk(double k) { return {Kind::QK, k}; }
  static CatalogId l() { return {Kind::L}; }
  static CatalogId f0(double k) { return {Kind::F0, k}; }
  static CatalogId general_q(Kind base, double base_k, Complex b1) {
    return {Kind::GeneralQ, base_k, 0.0, base, b1};
  }

  /// Round-trips through parse_catalog_id.
  std::string to_string() const;
};

/// Grammar name[:param[:param]]:
///   koebe-h | pk:K | palpha:K:ALPHA | p:K | q:K | qk:K | l | f0:K | gq:(pk|p):K:RE[:IM]
/// Throws ParseError; k must satisfy 0 <= k < 1, alpha 0 <= alpha < 2 pi, |b1| < 1.
CatalogId parse_catalog_id(std::string_view text);

/// Exact coefficients up to `order` (>= 1).
HarmonicMap coefficients(const CatalogId& id, int order);

/// f(z) from the closed form with principal logarithms. Throws BranchAmbiguity
/// for |z| >= 1 or when a logarithm argument leaves the right half-plane.
Complex evaluate_closed(const CatalogId& id, Complex z);

/// affine_combine(base, b1) labelled as a general Q.
HarmonicMap build_general_Q(const HarmonicMap& base, Complex b1);

/// a(n,k,alpha) and b(n,k,alpha) of the rotated half-plane shear.
Complex halfplane_alpha_a(int n, double k, double alpha);
Complex halfplane_alpha_b(int n, double k, double alpha);

}  // namespace qharm
