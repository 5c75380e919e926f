#include "wpdet/densities.hpp"

#include <limits>
#include <numeric>
#include <sstream>

#include "wpdet/errors.hpp"

namespace wpdet {

namespace {

std::uint64_t prime_power_modulus(std::uint64_t p, unsigned e) {
  std::uint64_t m;
  if (!checked_pow_u64(p, e, m) || m > (std::uint64_t{1} << 62))
    throw RefusalError("modulus " + std::to_string(p) + "^" + std::to_string(e) + " exceeds 62 bits");
  return m;
}

std::uint64_t horner_mod(const std::vector<std::uint64_t>& c, std::uint64_t t, std::uint64_t m) {
  std::uint64_t acc = 0;
  for (std::uint64_t a : c) {
    acc = mulmod(acc, t, m) + a % m;
    if (acc >= m) acc -= m;
  }
  return acc;
}

}  // namespace

std::uint64_t count_roots_mod_prime_power(const Polynomial& g, std::uint64_t p, unsigned e,
                                          bool only_multiples_of_p) {
  if (e == 0) return 1;
  const std::uint64_t full = prime_power_modulus(p, e);

  // Strip the p-content first: roots of g mod p^e are roots of g/p^v mod p^(e-v),
  // each one lifting to p^v residues.
  unsigned v = std::numeric_limits<unsigned>::max();
  const Integer P = from_u64(p);
  for (const auto& c : g)
    if (c != 0) v = std::min<unsigned>(v, static_cast<unsigned>(valuation(c, P)));
  if (v >= e) return only_multiples_of_p ? full / p : full;

  const unsigned e1 = e - v;
  const std::uint64_t lift = ipow_u64(p, v);
  const std::uint64_t mod = prime_power_modulus(p, e1);
  const Integer scale = ipow(P, v);
  std::vector<std::uint64_t> h, dh;
  const std::size_t deg = g.empty() ? 0 : g.size() - 1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Integer c = g[i] / scale;
    h.push_back(mod_u64(c, mod));
    if (i < deg) dh.push_back(mod_u64(c * static_cast<unsigned long>(deg - i), p));
  }

  std::vector<std::uint64_t> roots;
  if (only_multiples_of_p) {
    if (horner_mod(h, 0, p) == 0) roots.push_back(0);
  } else {
    for (std::uint64_t t = 0; t < p; ++t)
      if (horner_mod(h, t, p) == 0) roots.push_back(t);
  }

  // Lift level by level: at a simple root the lift is unique; at a root where
  // g' vanishes mod p either all p lifts survive or none does.
  std::uint64_t pj = p;
  for (unsigned j = 1; j < e1 && !roots.empty(); ++j) {
    const std::uint64_t next_mod = pj * p;
    const bool last = j + 1 == e1;
    std::vector<std::uint64_t> next;
    std::uint64_t counted = 0;
    for (std::uint64_t r : roots) {
      const std::uint64_t val = horner_mod(h, r, next_mod);
      const std::uint64_t dv = horner_mod(dh, r % p, p);
      if (dv != 0) {
        const std::uint64_t q = (val / pj) % p;
        const std::uint64_t c = mulmod((p - q) % p, invmod(dv, p), p);
        if (last) ++counted;
        else next.push_back(r + pj * c);
      } else if (val == 0) {
        if (last) counted += p;
        else
          for (std::uint64_t c = 0; c < p; ++c) next.push_back(r + pj * c);
      }
    }
    if (last) return counted * lift;
    roots = std::move(next);
    pj = next_mod;
  }
  return static_cast<std::uint64_t>(roots.size()) * lift;
}

namespace {

Integer rho_prime_power(const BinaryForm& f, std::uint64_t p, unsigned e) {
  if (e == 0) return 1;
  const std::uint64_t m = prime_power_modulus(p, e);
  const std::uint64_t units = m - m / p;
  const auto& hi_lo = f.coefficients();
  Polynomial on_x(hi_lo.begin(), hi_lo.end());    // F(t, 1)
  Polynomial on_y(hi_lo.rbegin(), hi_lo.rend());  // F(1, s)
  Integer total = from_u64(units) * (from_u64(count_roots_mod_prime_power(on_x, p, e)) +
                                     from_u64(count_roots_mod_prime_power(on_y, p, e, true)));
  // Both coordinates divisible by p: F(p i, p j) = p^D F(i, j).
  const unsigned D = f.degree();
  const Integer P = from_u64(p);
  if (D >= e) total += ipow(P, 2 * (e - 1));
  else total += rho_prime_power(f, p, e - D) * ipow(P, 2 * (D - 1));
  return total;
}

}  // namespace

Integer rho_binary(const BinaryForm& f, std::uint64_t m) {
  if (m == 0) throw DomainError("rho is undefined for m = 0");
  Integer total = 1;
  for (const auto& [p, e] : factor_u64(m)) total *= rho_prime_power(f, p, e);
  return total;
}

std::uint64_t rho_univariate(const Polynomial& g, std::uint64_t m) {
  if (m == 0) throw DomainError("rho is undefined for m = 0");
  std::uint64_t total = 1;
  for (const auto& [p, e] : factor_u64(m)) total *= count_roots_mod_prime_power(g, p, e);
  return total;
}

std::optional<std::uint64_t> fixed_power_divisor(const BinaryForm& f, unsigned k, std::uint64_t probe) {
  if (f.is_zero()) throw DomainError("fixed divisor of the zero form");
  if (k < 2) throw DomainError("k must be at least 2");
  const std::uint64_t D = f.degree();
  if (probe == 0) probe = 4 * k * D;
  if (probe < 2 * k * D) throw DomainError("probe grid must be at least 2kD");

  Integer g = 0;
  for (std::uint64_t x = 0; x < probe && g != 1; ++x)
    for (std::uint64_t y = 0; y < probe && g != 1; ++y) g = gcd(g, f.evaluate(from_u64(x), from_u64(y)));
  if (g == 1) return std::nullopt;

  for (const auto& [p, e] : factor(g)) {
    if (e < k) continue;
    if (!fits_u64(p)) {
      // Too large for residue counting; p^k must then divide every coefficient.
      if (f.content() % ipow(p, k) == 0) throw RefusalError("fixed divisor " + to_decimal(p) + " exceeds 64 bits");
      continue;
    }
    const std::uint64_t q = to_u64(p);
    std::uint64_t pk;
    if (!checked_pow_u64(q, k, pk)) throw RefusalError("p^k exceeds 64 bits for p = " + to_decimal(p));
    if (rho_binary(f, pk) == ipow(p, 2 * k)) return q;
  }
  return std::nullopt;
}

namespace {

std::string describe_tail(std::uint64_t bound, double c, const char* shape) {
  std::ostringstream os;
  os.precision(6);
  os << "product truncated at p <= " << bound << "; remaining factors assumed of the form (1 - c " << shape
     << ") with empirical c = " << c << " taken from the tested primes (not a rigorous bound)";
  return os.str();
}

}  // namespace

DensityResult density_binary(const BinaryForm& f, unsigned k, std::uint64_t prime_bound) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (prime_bound < 2) throw DomainError("prime bound must be at least 2");
  DensityResult r;
  r.partial_product = 1;
  r.prime_bound = prime_bound;
  for (std::uint64_t p : primes_up_to(prime_bound)) {
    const Integer P = from_u64(p);
    Integer rho = rho_prime_power(f, p, k);
    Rational factor(ipow(P, 2 * k) - rho, ipow(P, 2 * k));
    factor.canonicalize();
    r.partial_product *= factor;
    r.tail_constant = std::max(r.tail_constant, Rational(rho, ipow(P, 2 * k - 2)).get_d());
  }
  r.float_value = r.partial_product.get_d();
  r.tail_note = describe_tail(prime_bound, r.tail_constant, "p^-2");
  return r;
}

DensityResult density_univariate(const Polynomial& g, unsigned k, std::uint64_t prime_bound) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (prime_bound < 2) throw DomainError("prime bound must be at least 2");
  DensityResult r;
  r.partial_product = 1;
  r.prime_bound = prime_bound;
  for (std::uint64_t p : primes_up_to(prime_bound)) {
    const std::uint64_t rho = count_roots_mod_prime_power(g, p, k);
    const Integer pk = ipow(from_u64(p), k);
    Rational factor(pk - from_u64(rho), pk);
    factor.canonicalize();
    r.partial_product *= factor;
    r.tail_constant = std::max(r.tail_constant, static_cast<double>(rho));
  }
  r.float_value = r.partial_product.get_d();
  r.tail_note = describe_tail(prime_bound, r.tail_constant, "p^-k");
  return r;
}

}  // namespace wpdet
