#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpdet/weighted_algebra.hpp"

namespace wpdet {

/// Integer polynomial, coefficients high degree first.
using Polynomial = std::vector<Integer>;

/// Number of t in [0, p^e) with g(t) = 0 mod p^e. With only_multiples_of_p
/// the count is restricted to t divisible by p. p^e must fit in 63 bits.
std::uint64_t count_roots_mod_prime_power(const Polynomial& g, std::uint64_t p, unsigned e,
                                          bool only_multiples_of_p = false);

/// #{(i, j) in [0, m)^2 : F(i, j) = 0 mod m}. Computed per prime power of m
/// from the roots of F(t, 1) and F(1, s) and the p | i, j layer.
Integer rho_binary(const BinaryForm& f, std::uint64_t m);

/// #{i in [0, m) : g(i) = 0 mod m}.
std::uint64_t rho_univariate(const Polynomial& g, std::uint64_t m);

/// Least prime p with p^k dividing F(x, y) for every integer pair, or nullopt.
/// Candidates come from the gcd of F over a probe x probe grid (probe 0 means
/// the default 4kD); each is confirmed by rho_F(p^k) = p^{2k}.
std::optional<std::uint64_t> fixed_power_divisor(const BinaryForm& f, unsigned k, std::uint64_t probe = 0);

struct DensityResult {
  Rational partial_product;
  std::uint64_t prime_bound = 0;
  std::string tail_note;
  double float_value = 0.0;
  bool truncated = true;
  /// Largest observed rho(p^k) / p^{2k-2} (binary) or rho(p^k) / p^{k-1}
  /// (univariate) over the primes used.
  double tail_constant = 0.0;
};

/// prod_{p <= prime_bound} (1 - rho_F(p^k) / p^{2k}).
DensityResult density_binary(const BinaryForm& f, unsigned k, std::uint64_t prime_bound);

/// prod_{p <= prime_bound} (1 - rho_g(p^k) / p^k).
DensityResult density_univariate(const Polynomial& g, unsigned k, std::uint64_t prime_bound);

}  // namespace wpdet
