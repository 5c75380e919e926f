#include <algorithm>
#include <map>
#include <numeric>

#include "wpdet/arith.hpp"
#include "wpdet/errors.hpp"

namespace wpdet {
namespace {

constexpr std::uint64_t kTrialLimit = 1000;

const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(kTrialLimit);
  return primes;
}

// Brent's variant of Pollard rho; n must be odd composite.
std::uint64_t rho_u64(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_u64(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = rho_u64(n);
  split_u64(d, out);
  split_u64(n / d, out);
}

Integer rho_big(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, g = 1, q = 1, ys = 2, t;
    auto f = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    unsigned long r = 1;
    const unsigned long m = 64;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          f(y);
          t = abs(x - y);
          q = q * t;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        f(ys);
        t = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_big(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (fits_u64(n)) {
    std::map<std::uint64_t, unsigned> small;
    split_u64(to_u64(n), small);
    for (auto [p, e] : small) out[from_u64(p)] += e;
    return;
  }
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  // Perfect powers defeat rho on occasion; peel roots first.
  for (unsigned long e = 2; e < 64; ++e) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
      std::map<Integer, unsigned> inner;
      split_big(root, inner);
      for (auto& [p, k] : inner) out[p] += k * static_cast<unsigned>(e);
      return;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) / e < 2) break;
  }
  Integer d = rho_big(n);
  split_big(d, out);
  split_big(n / d, out);
}

}  // namespace

SmallFactorization factor_u64(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factor zero");
  SmallFactorization out;
  for (std::uint64_t p : trial_primes()) {
    if (p * p > n) break;
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({p, e});
    }
  }
  if (n > 1) {
    if (n < kTrialLimit * kTrialLimit) {
      out.push_back({n, 1});
    } else {
      std::map<std::uint64_t, unsigned> rest;
      split_u64(n, rest);
      for (auto [p, e] : rest) out.push_back({p, e});
    }
  }
  return out;
}

Factorization factor(const Integer& n) {
  if (n == 0) throw DomainError("cannot factor zero");
  Integer m = abs(n);
  if (fits_u64(m)) {
    Factorization out;
    for (auto [p, e] : factor_u64(to_u64(m))) out.push_back({from_u64(p), e});
    return out;
  }
  Factorization out;
  for (std::uint64_t p : trial_primes()) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      out.push_back({from_u64(p), e});
    }
  }
  std::map<Integer, unsigned> rest;
  split_big(m, rest);
  for (auto& [p, e] : rest) out.push_back({p, e});
  return out;
}

}  // namespace wpdet
