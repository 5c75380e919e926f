#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wpdet {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_decimal(const Integer& n);
/// "num/den" with den > 0; integers render as "n/1".
std::string to_fraction(const Rational& q);
Integer parse_integer(const std::string& text);
/// Accepts "n" or "n/m".
Rational parse_rational(const std::string& text);

Integer ipow(const Integer& base, unsigned long exponent);
std::uint64_t ipow_u64(std::uint64_t base, unsigned exponent);
/// ipow_u64 that reports overflow instead of wrapping.
bool checked_pow_u64(std::uint64_t base, unsigned exponent, std::uint64_t& out);

/// p-adic valuation of a nonzero integer.
unsigned long valuation(const Integer& n, const Integer& p);
unsigned valuation_u64(std::uint64_t n, std::uint64_t p);

/// Reduction into [0, m).
std::uint64_t mod_u64(const Integer& n, std::uint64_t m);

bool fits_u64(const Integer& n);
std::uint64_t to_u64(const Integer& n);
Integer from_u64(std::uint64_t v);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);
/// Inverse of a modulo prime p; a must be nonzero mod p.
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);
bool is_prime(const Integer& n);
std::uint64_t next_prime(std::uint64_t n);

/// Sieve of Eratosthenes, primes p <= limit in increasing order.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

struct PrimePower {
  Integer prime;
  unsigned exponent;
};
using Factorization = std::vector<PrimePower>;

struct SmallPrimePower {
  std::uint64_t prime;
  unsigned exponent;
};
using SmallFactorization = std::vector<SmallPrimePower>;

/// Factorization of |n| sorted by prime; n must be nonzero. |n| = 1 gives {}.
Factorization factor(const Integer& n);
SmallFactorization factor_u64(std::uint64_t n);

}  // namespace wpdet
