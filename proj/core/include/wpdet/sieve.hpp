#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpdet/weighted_algebra.hpp"

namespace wpdet {

/// Primes p with p^k | n, ascending. n must be nonzero.
std::vector<Integer> kth_power_prime_divisors(const Integer& n, unsigned k);

/// True iff no p^k divides n; n = 0 is a DomainError.
bool is_kfree(const Integer& n, unsigned k);

/// #{(x, y) in [1, B]^2 : F(x, y) != 0 and F(x, y) is k-free}.
std::uint64_t count_kfree(const BinaryForm& f, unsigned k, std::uint64_t B);

/// #{(x, y) : |x|, |y| <= B, b^k | F(x, y)}.
std::uint64_t count_divisible(const BinaryForm& f, std::uint64_t b, unsigned k, std::uint64_t B);

struct SieveReport {
  std::uint64_t B = 0;
  unsigned k = 0;
  std::uint64_t N = 0;
  std::uint64_t M1 = 0;
  std::uint64_t M2 = 0;
  std::uint64_t M3 = 0;
  /// Pairs in [1, B]^2 where F vanishes; left out of every count.
  std::uint64_t zeros = 0;
  double xi = 0.0;
  /// B^2 / log B, the split between M2 and M3.
  double large_prime_cut = 0.0;
  bool sandwich_holds = false;
};

/// The M1/M2/M3 split of the pairs in [1, B]^2 by the primes whose k-th power
/// divides F(x, y). xi defaults to log(B) / (2k).
SieveReport m_decomposition(const BinaryForm& f, unsigned k, std::uint64_t B,
                            std::optional<double> xi = std::nullopt);

/// Number of distinct k-free t with |t| <= B and t = F(x, y) for some
/// |x|, |y| <= xy_cap. A lower bound for the full count of such t.
std::uint64_t count_representable(const BinaryForm& f, unsigned k, const Integer& B, std::uint64_t xy_cap);

/// prod |h|_p^{-1} over primes p <= B^theta with p not dividing disc and the
/// p-part of h at most B^theta. theta must lie in (0, 1].
Integer local_product_s(const Integer& h, const Rational& theta, const Integer& B, const Integer& disc);

}  // namespace wpdet
