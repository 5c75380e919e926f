#pragma once

#include <array>

#include "wpdet/weighted_algebra.hpp"

namespace wpdet {

struct Regime {
  unsigned d;
  unsigned k;
  Rational lambda;  // k / d
};

Regime make_regime(unsigned d, unsigned k);

/// psi^2 = (1/4)(1 + (d - k beta)/(d - 2k) + beta/2)^2 * 2(d - 2k)/d, exact.
Rational psi_squared(unsigned d, unsigned k, const Rational& beta);

/// (1/2)(1 + (d - k beta)/(d - 2k) + beta/2) sqrt(2(d - 2k)/d).
double psi(unsigned d, unsigned k, const Rational& beta);

/// Rational enclosure lo <= psi <= hi of width at most 2^-bits.
struct PsiEnclosure {
  Rational lo;
  Rational hi;
};
PsiEnclosure psi_enclosure(unsigned d, unsigned k, const Rational& beta, unsigned bits = 48);

/// Sign of psi - 1, decided exactly.
int compare_psi_to_one(unsigned d, unsigned k, const Rational& beta);

/// ((2 + beta) l + 2 alpha_z (2 - beta)) / l^2; requires l >= 1 and
/// 0 <= 2 alpha_z <= l.
Rational big_psi(unsigned l, const Rational& beta, unsigned alpha_z);

/// Least k >= 2 with k > min(7d/18, ceil(d/2) - 2).
unsigned threshold_binary(unsigned d);
bool admissible_binary(unsigned d, unsigned k);
/// Least k >= 2 with k >= (d - 1)/2, the older binary-form regime.
unsigned threshold_greaves(unsigned d);

/// ceil((3d + 1)/4), d >= 3.
unsigned threshold_univariate(unsigned d);
bool admissible_univariate(unsigned d, unsigned k);

/// (a_x, a_y, a_v, a_z) = (1/3, 1/3, 2k/(3d(d - 2k)), (d - 2k)/(6d)).
std::array<Rational, 4> a_coeffs_surface(unsigned d, unsigned k);

/// (1, 1, d - k, 1).
WeightVector univariate_weights(unsigned d, unsigned k);

/// Endpoints of the beta range used by the dyadic decomposition of z:
/// 2 - log log B / log B and d/k + log(d ||f||) / log B.
double beta_lower(double B);
double beta_upper(double B, unsigned d, unsigned k, const Integer& height);

}  // namespace wpdet
