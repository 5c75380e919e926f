#include "wpdet/exponents.hpp"

#include <cmath>

#include "wpdet/errors.hpp"

namespace wpdet {

namespace {

void require_surface_regime(unsigned d, unsigned k) {
  if (k < 1 || d < 2 * k + 1)
    throw RegimeError("need d - 2k >= 1 (d = " + std::to_string(d) + ", k = " + std::to_string(k) + ")");
}

Rational q(long long n, long long m = 1) {
  Rational r(Integer(static_cast<long>(n)), Integer(static_cast<long>(m)));
  r.canonicalize();
  return r;
}

Rational psi_base(unsigned d, unsigned k, const Rational& beta) {
  const long long dd = d, kk = k;
  return (1 + (q(dd) - q(kk) * beta) / q(dd - 2 * kk) + beta / 2) / 2;
}

}  // namespace

Regime make_regime(unsigned d, unsigned k) {
  if (d < 2 || k < 2) throw DomainError("regime needs d >= 2 and k >= 2");
  return Regime{d, k, q(k, d)};
}

Rational psi_squared(unsigned d, unsigned k, const Rational& beta) {
  require_surface_regime(d, k);
  Rational base = psi_base(d, k, beta);
  return base * base * q(2 * (static_cast<long long>(d) - 2 * k), d);
}

double psi(unsigned d, unsigned k, const Rational& beta) {
  require_surface_regime(d, k);
  const double radicand = 2.0 * (static_cast<double>(d) - 2.0 * k) / d;
  return psi_base(d, k, beta).get_d() * std::sqrt(radicand);
}

PsiEnclosure psi_enclosure(unsigned d, unsigned k, const Rational& beta, unsigned bits) {
  require_surface_regime(d, k);
  // |psi| = sqrt(N) / den with N = num * den of psi^2.
  Rational sq = psi_squared(d, k, beta);
  Integer N = sq.get_num() * sq.get_den() << (2 * bits);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), N.get_mpz_t());
  const Integer scale = sq.get_den() << bits;
  Rational lo(s, scale), hi(s + 1, scale);
  if (s * s == N) hi = lo;
  lo.canonicalize();
  hi.canonicalize();
  if (psi_base(d, k, beta) < 0) return {-hi, -lo};
  return {lo, hi};
}

int compare_psi_to_one(unsigned d, unsigned k, const Rational& beta) {
  require_surface_regime(d, k);
  if (psi_base(d, k, beta) <= 0) return -1;
  return cmp(psi_squared(d, k, beta), 1) < 0 ? -1 : (psi_squared(d, k, beta) == 1 ? 0 : 1);
}

Rational big_psi(unsigned l, const Rational& beta, unsigned alpha_z) {
  if (l < 1) throw DomainError("big psi needs l >= 1");
  if (2 * alpha_z > l) throw DomainError("big psi needs 2 alpha_z <= l");
  const Rational L(l);
  return ((2 + beta) * L + 2 * Rational(alpha_z) * (2 - beta)) / (L * L);
}

unsigned threshold_binary(unsigned d) {
  if (d < 2) throw DomainError("threshold needs d >= 2");
  const Rational seven = q(7LL * d, 18);
  const Rational half = q((static_cast<long long>(d) + 1) / 2 - 2);
  const Rational m = std::min(seven, half);
  // Least integer strictly above m.
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
  Integer k = fl + 1;
  if (k < 2) k = 2;
  return static_cast<unsigned>(k.get_ui());
}

bool admissible_binary(unsigned d, unsigned k) { return k >= threshold_binary(d); }

unsigned threshold_greaves(unsigned d) {
  if (d < 2) throw DomainError("threshold needs d >= 2");
  return std::max(2U, d / 2);  // ceil((d - 1)/2)
}

unsigned threshold_univariate(unsigned d) {
  if (d < 3) throw DomainError("univariate threshold needs d >= 3");
  return (3 * d + 1 + 3) / 4;
}

bool admissible_univariate(unsigned d, unsigned k) { return 4 * k >= 3 * d + 1; }

std::array<Rational, 4> a_coeffs_surface(unsigned d, unsigned k) {
  require_surface_regime(d, k);
  const long long dd = d, kk = k, e = dd - 2 * kk;
  return {q(1, 3), q(1, 3), q(2 * kk, 3 * dd * e), q(e, 6 * dd)};
}

WeightVector univariate_weights(unsigned d, unsigned k) {
  if (k >= d) throw RegimeError("univariate weights need d - k >= 1");
  return WeightVector{1, 1, d - k, 1};
}

double beta_lower(double B) {
  if (B <= std::exp(1.0)) throw DomainError("beta range needs log B > 1");
  const double L = std::log(B);
  return 2.0 - std::log(L) / L;
}

double beta_upper(double B, unsigned d, unsigned k, const Integer& height) {
  if (B <= 1.0) throw DomainError("beta range needs B > 1");
  const double dh = static_cast<double>(d) * Integer(height).get_d();
  return static_cast<double>(d) / k + std::log(dh) / std::log(B);
}

}  // namespace wpdet
