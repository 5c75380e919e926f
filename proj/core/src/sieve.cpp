#include "wpdet/sieve.hpp"

#include <cmath>
#include <set>

#include "wpdet/densities.hpp"
#include "wpdet/errors.hpp"
#include "wpdet/parallel.hpp"

namespace wpdet {

namespace {

// Enough for p^3 <= 2^64.
const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(std::uint64_t{1} << 22);
  return primes;
}

bool power_exceeds(std::uint64_t p, unsigned e, std::uint64_t r) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    acc *= p;
    if (acc > r) return true;
  }
  return false;
}

// Primes p with p^k | r for r >= 1. Trial division runs while p^(k+1) <= r;
// what is left then has at most k prime factors, all at least p, so it
// contributes a prime exactly when it is a perfect k-th power.
template <class Sink>
void kth_power_primes_u64(std::uint64_t r, unsigned k, Sink&& sink) {
  const auto& primes = trial_primes();
  std::size_t i = 0;
  for (; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    if (power_exceeds(p, k + 1, r)) break;
    if (r % p != 0) continue;
    unsigned e = 0;
    do {
      r /= p;
      ++e;
    } while (r % p == 0);
    if (e >= k && !sink(Integer(static_cast<unsigned long>(p)))) return;
  }
  if (r == 1) return;
  if (i == primes.size()) {
    for (const auto& [p, e] : factor_u64(r))
      if (e >= k && !sink(from_u64(p))) return;
    return;
  }
  Integer root, rem = from_u64(r);
  if (mpz_root(root.get_mpz_t(), rem.get_mpz_t(), k) != 0) sink(root);
}

template <class Sink>
void kth_power_primes(const Integer& n, unsigned k, Sink&& sink) {
  if (n == 0) throw DomainError("0 is divisible by every k-th power");
  if (k < 1) throw DomainError("k must be positive");
  const Integer a = abs(n);
  if (fits_u64(a)) {
    kth_power_primes_u64(to_u64(a), k, sink);
    return;
  }
  for (const auto& [p, e] : factor(a))
    if (e >= k && !sink(p)) return;
}

// Evaluates F on integer pairs, in 128-bit arithmetic when the box allows it.
class PairEvaluator {
 public:
  PairEvaluator(const BinaryForm& f, std::uint64_t B) : f_(f) {
    Integer bound = f.height() * (f.degree() + 1) * ipow(from_u64(std::max<std::uint64_t>(B, 1)), f.degree());
    fast_ = bound < ipow(Integer(2), 100) && f.height() < ipow(Integer(2), 62);
    if (fast_)
      for (const auto& c : f.coefficients()) c64_.push_back(c.get_si());
  }

  Integer operator()(long long x, long long y) const {
    if (!fast_) return f_.evaluate(Integer(static_cast<long>(x)), Integer(static_cast<long>(y)));
    // Horner in x; the coefficient of x^(D-i) carries y^i.
    __int128 acc = 0, ypow = 1;
    for (std::size_t i = 0; i < c64_.size(); ++i) {
      if (i > 0) ypow *= y;
      acc = acc * x + static_cast<__int128>(c64_[i]) * ypow;
    }
    return to_integer(acc);
  }

 private:
  static Integer to_integer(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer r = from_u64(static_cast<std::uint64_t>(u >> 64));
    r <<= 64;
    r += from_u64(static_cast<std::uint64_t>(u));
    return neg ? Integer(-r) : r;
  }

  const BinaryForm& f_;
  bool fast_ = false;
  std::vector<long long> c64_;
};

}  // namespace

std::vector<Integer> kth_power_prime_divisors(const Integer& n, unsigned k) {
  std::vector<Integer> out;
  kth_power_primes(n, k, [&](const Integer& p) {
    out.push_back(p);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_kfree(const Integer& n, unsigned k) {
  if (k < 2) throw DomainError("k must be at least 2");
  bool free = true;
  kth_power_primes(n, k, [&](const Integer&) {
    free = false;
    return false;
  });
  return free;
}

std::uint64_t count_kfree(const BinaryForm& f, unsigned k, std::uint64_t B) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (B == 0) return 0;
  PairEvaluator eval(f, B);
  std::vector<std::uint64_t> counts(worker_slots(B), 0);
  parallel_for(B, [&](unsigned worker, std::size_t row) {
    const long long x = static_cast<long long>(row) + 1;
    std::uint64_t c = 0;
    for (std::uint64_t y = 1; y <= B; ++y) {
      Integer v = eval(x, static_cast<long long>(y));
      if (v != 0 && is_kfree(v, k)) ++c;
    }
    counts[worker] += c;
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::uint64_t count_divisible(const BinaryForm& f, std::uint64_t b, unsigned k, std::uint64_t B) {
  if (b == 0) throw DomainError("b must be positive");
  std::uint64_t m;
  if (!checked_pow_u64(b, k, m)) throw RefusalError("b^k exceeds 64 bits");
  const std::uint64_t L = 2 * B + 1;
  const long long lo = -static_cast<long long>(B);
  auto residue = [m](long long x) {
    long long r = x % static_cast<long long>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(m) : r);
  };
  auto hit = [&](long long x, long long y) { return f.evaluate_mod(residue(x), residue(y), m) == 0; };

  if (m > L) {
    std::uint64_t c = 0;
    for (long long x = lo; x <= static_cast<long long>(B); ++x)
      for (long long y = lo; y <= static_cast<long long>(B); ++y) c += hit(x, y);
    return c;
  }
  // [lo, lo + q m) is a union of q full residue systems; the last r values
  // are the partial strip, handled by scanning.
  const std::uint64_t q = L / m, r = L % m;
  const long long tail = lo + static_cast<long long>(q * m);
  Integer total = rho_binary(f, m) * from_u64(q * q);
  std::uint64_t strip = 0;
  for (std::uint64_t t = 0; t < r; ++t)
    for (std::uint64_t a = 0; a < m; ++a) {
      const long long s = tail + static_cast<long long>(t);
      strip += hit(static_cast<long long>(a), s);
      strip += hit(s, static_cast<long long>(a));
    }
  total += from_u64(strip) * from_u64(q);
  for (std::uint64_t t = 0; t < r; ++t)
    for (std::uint64_t u = 0; u < r; ++u) total += hit(tail + static_cast<long long>(t), tail + static_cast<long long>(u));
  return to_u64(total);
}

SieveReport m_decomposition(const BinaryForm& f, unsigned k, std::uint64_t B, std::optional<double> xi) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (B < 3) throw DomainError("the decomposition needs B >= 3");
  SieveReport rep;
  rep.B = B;
  rep.k = k;
  const double logB = std::log(static_cast<double>(B));
  rep.xi = xi.value_or(logB / (2.0 * k));
  rep.large_prime_cut = static_cast<double>(B) * static_cast<double>(B) / logB;
  // Comparisons against the real thresholds are made on integer floors, which
  // is exact for integer p: p > t iff p > floor(t), p <= t iff p <= floor(t).
  const Integer xi_floor(std::floor(rep.xi));
  const Integer cut_floor(std::floor(rep.large_prime_cut));

  struct Tally {
    std::uint64_t N = 0, M1 = 0, M2 = 0, M3 = 0, zeros = 0;
  };
  std::vector<Tally> tallies(worker_slots(B));
  PairEvaluator eval(f, B);
  parallel_for(B, [&](unsigned worker, std::size_t row) {
    Tally& t = tallies[worker];
    const long long x = static_cast<long long>(row) + 1;
    for (std::uint64_t y = 1; y <= B; ++y) {
      Integer v = eval(x, static_cast<long long>(y));
      if (v == 0) {
        ++t.zeros;
        continue;
      }
      bool small = false, middle = false, large = false;
      for (const auto& p : kth_power_prime_divisors(v, k)) {
        if (p <= xi_floor) small = true;
        else if (p <= cut_floor) middle = true;
        else large = true;
      }
      if (!small && !middle && !large) ++t.N;
      if (!small) {
        ++t.M1;
        if (middle) ++t.M2;
      }
      if (large) ++t.M3;
    }
  });
  for (const auto& t : tallies) {
    rep.N += t.N;
    rep.M1 += t.M1;
    rep.M2 += t.M2;
    rep.M3 += t.M3;
    rep.zeros += t.zeros;
  }
  const Integer lower = Integer(from_u64(rep.M1)) - from_u64(rep.M2) - from_u64(rep.M3);
  rep.sandwich_holds = lower <= from_u64(rep.N) && rep.N <= rep.M1;
  return rep;
}

std::uint64_t count_representable(const BinaryForm& f, unsigned k, const Integer& B, std::uint64_t xy_cap) {
  if (k < 2) throw DomainError("k must be at least 2");
  std::set<Integer> seen;
  const long long cap = static_cast<long long>(xy_cap);
  for (long long x = -cap; x <= cap; ++x)
    for (long long y = -cap; y <= cap; ++y) {
      Integer t = f.evaluate(Integer(static_cast<long>(x)), Integer(static_cast<long>(y)));
      if (t == 0 || abs(t) > B || seen.count(t)) continue;
      if (is_kfree(t, k)) seen.insert(t);
    }
  return seen.size();
}

Integer local_product_s(const Integer& h, const Rational& theta, const Integer& B, const Integer& disc) {
  if (h == 0) throw DomainError("local product of h = 0");
  if (B < 2) throw DomainError("B must be at least 2");
  if (theta <= 0 || theta > 1) throw DomainError("theta must lie in (0, 1]");
  const Integer& a = theta.get_num();
  const Integer& b = theta.get_den();
  const Integer Ba = ipow(B, a.get_ui());
  const unsigned long bb = b.get_ui();
  Integer out = 1;
  for (const auto& [p, e] : factor(h)) {
    if (disc % p == 0) continue;
    // p <= B^theta and p^e <= B^theta, compared as p^(e b) <= B^a.
    if (ipow(p, e * bb) <= Ba) out *= ipow(p, e);
  }
  return out;
}

}  // namespace wpdet
