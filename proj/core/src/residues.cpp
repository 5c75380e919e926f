#include <algorithm>
#include <map>

#include "wpdet/detmethod.hpp"
#include "wpdet/errors.hpp"

namespace wpdet {

Residue canonical_residue(const Surface& X, const Residue& P, std::uint64_t p) {
  const WeightVector& w = X.weights();
  Residue r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = P[i] % p;
  const std::size_t lead = r[0] != 0 ? 0 : (r[1] != 0 ? 1 : 4);
  if (lead == 4) throw DomainError("x and y both vanish mod " + std::to_string(p));
  const std::uint64_t lambda = invmod(r[lead], p);
  for (std::size_t i = 0; i < 4; ++i) r[i] = mulmod(powmod(lambda, w[i], p), r[i], p);
  return r;
}

Residue reduce_point(const Surface& X, const LatticePoint& xi, std::uint64_t p) {
  const auto c = xi.coords();
  Residue r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = mod_u64(c[i], p);
  return canonical_residue(X, r, p);
}

bool on_surface_mod_p(const Surface& X, const Residue& P, std::uint64_t p) {
  return X.form.evaluate_mod(P, p) == 0;
}

namespace {

void require_on_surface(const Surface& X, const Residue& P, std::uint64_t p) {
  if (!on_surface_mod_p(X, P, p)) throw DomainError("point is not on the surface mod " + std::to_string(p));
}

}  // namespace

bool is_singular_mod_p(const Surface& X, const Residue& P, std::uint64_t p) {
  require_on_surface(X, P, p);
  for (std::size_t i = 0; i < 4; ++i)
    if (X.form.partial(i).evaluate_mod(P, p) != 0) return false;
  return true;
}

namespace {

std::uint64_t binomial_mod(unsigned n, unsigned r, std::uint64_t p) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), n, r);
  return mod_u64(c, p);
}

// Expansion of the form around P with the coordinate `chart` fixed to 1 (or
// no coordinate fixed when chart == 4); returns the lowest total degree.
unsigned lowest_degree_at(const Surface& X, const Residue& P, std::uint64_t p, std::size_t chart) {
  std::map<std::array<unsigned, 4>, std::uint64_t> expansion;
  for (const auto& [e, c] : X.form.terms()) {
    const std::uint64_t cm = mod_u64(c, p);
    if (cm == 0) continue;
    // Running product of (t_i + a_i)^{e_i} over the free coordinates.
    std::map<std::array<unsigned, 4>, std::uint64_t> partial{{{0, 0, 0, 0}, cm}};
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == chart || e[i] == 0) continue;
      std::map<std::array<unsigned, 4>, std::uint64_t> next;
      for (const auto& [mono, coef] : partial)
        for (unsigned j = 0; j <= e[i]; ++j) {
          const std::uint64_t term =
              mulmod(mulmod(coef, binomial_mod(e[i], j, p), p), powmod(P[i], e[i] - j, p), p);
          if (term == 0) continue;
          auto m = mono;
          m[i] += j;
          auto& slot = next[m];
          slot = (slot + term) % p;
        }
      partial = std::move(next);
    }
    for (const auto& [mono, coef] : partial) {
      auto& slot = expansion[mono];
      slot = (slot + coef) % p;
    }
  }
  unsigned best = ~0U;
  for (const auto& [mono, coef] : expansion)
    if (coef != 0) best = std::min(best, mono[0] + mono[1] + mono[2] + mono[3]);
  if (best == ~0U) throw DomainError("the form vanishes identically mod " + std::to_string(p));
  return best;
}

}  // namespace

unsigned multiplicity_mod_p(const Surface& X, const Residue& P, std::uint64_t p) {
  require_on_surface(X, P, p);
  if (P[0] % p == 0 && P[1] % p == 0) return lowest_degree_at(X, P, p, 4);
  const Residue Q = canonical_residue(X, P, p);
  return lowest_degree_at(X, Q, p, Q[0] != 0 ? 0 : 1);
}

FpPointCount count_Fp_points(const Surface& X, std::uint64_t p, std::uint64_t cap) {
  if (p > cap) throw RefusalError("exhaustive F_p enumeration refused for p = " + std::to_string(p) +
                                  " above cap " + std::to_string(cap));
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  FpPointCount out;
  auto visit = [&](const Residue& P) {
    if (!on_surface_mod_p(X, P, p)) return;
    ++out.raw;
    out.n_p += multiplicity_mod_p(X, P, p);
  };
  for (std::uint64_t y = 0; y < p; ++y)
    for (std::uint64_t v = 0; v < p; ++v)
      for (std::uint64_t z = 0; z < p; ++z) visit({1, y, v, z});
  for (std::uint64_t v = 0; v < p; ++v)
    for (std::uint64_t z = 0; z < p; ++z) visit({0, 1, v, z});
  // x = y = 0: keep (v, z) when it is the least member of its orbit.
  const unsigned wv = X.weights()[2], wz = X.weights()[3];
  for (std::uint64_t v = 0; v < p; ++v)
    for (std::uint64_t z = 0; z < p; ++z) {
      if (v == 0 && z == 0) continue;
      bool least = true;
      for (std::uint64_t lambda = 2; lambda < p && least; ++lambda) {
        const std::pair<std::uint64_t, std::uint64_t> image{mulmod(powmod(lambda, wv, p), v, p),
                                                            mulmod(powmod(lambda, wz, p), z, p)};
        if (image < std::pair(v, z)) least = false;
      }
      if (least) visit({0, 0, v, z});
    }
  return out;
}

}  // namespace wpdet
