#include "wpdet/arith.hpp"

#include <cctype>
#include <limits>

#include "wpdet/errors.hpp"

namespace wpdet {

std::string to_decimal(const Integer& n) { return n.get_str(10); }

std::string to_fraction(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

Integer parse_integer(const std::string& raw) {
  const std::size_t a = raw.find_first_not_of(" \t\n"), b = raw.find_last_not_of(" \t\n");
  const std::string text = a == std::string::npos ? std::string() : raw.substr(a, b - a + 1);
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) throw ParseError("empty integer literal");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("invalid integer literal '" + text + "'");
  }
  Integer n;
  n.set_str(text[0] == '+' ? text.substr(1) : text, 10);
  return n;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

std::uint64_t ipow_u64(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  while (exponent--) r *= base;
  return r;
}

bool checked_pow_u64(std::uint64_t base, unsigned exponent, std::uint64_t& out) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) return false;
    r *= base;
  }
  out = r;
  return true;
}

unsigned long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero is infinite");
  Integer m = abs(n);
  unsigned long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

unsigned valuation_u64(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw DomainError("valuation of zero is infinite");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::uint64_t mod_u64(const Integer& n, std::uint64_t m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), from_u64(m).get_mpz_t());
  return to_u64(r);
}

bool fits_u64(const Integer& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Integer& n) {
  if (!fits_u64(n)) throw DomainError("integer does not fit in 64 bits");
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return count == 0 ? 0 : out;
}

Integer from_u64(std::uint64_t v) {
  Integer r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exponent) {
    if (exponent & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw DomainError("zero has no inverse modulo p");
  return powmod(a, p - 2, p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace wpdet
