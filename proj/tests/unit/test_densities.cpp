#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "wpdet/arith.hpp"
#include "wpdet/densities.hpp"
#include "wpdet/errors.hpp"
#include "wpdet/form_io.hpp"

using namespace wpdet;

TEST_CASE("rho examples") {
  CHECK(rho_binary(parse_binary_form("x*y"), 1) == 1);
  CHECK(rho_binary(parse_binary_form("x*y"), 5) == 9);
  CHECK(rho_univariate({1, 0}, 7) == 1);
  CHECK(rho_univariate({1, 0, -1}, 8) == 4);
  CHECK(rho_univariate({1, 0, -1}, 1) == 1);
  CHECK_THROWS_AS(rho_binary(parse_binary_form("x*y"), 0), DomainError);
}

TEST_CASE("rho_binary against the full scan") {
  std::mt19937_64 rng(41);
  std::vector<BinaryForm> forms{parse_binary_form("x^2+y^2"), parse_binary_form("x^3+2y^3"),
                                parse_binary_form("x^6+2y^6"), parse_binary_form("4x^6+4y^6"),
                                parse_binary_form("x^2*y^2"), parse_binary_form("x^4-y^4"),
                                parse_binary_form("9x^2 - 3x*y"), parse_binary_form("x^3 - 8y^3")};
  for (int t = 0; t < 12; ++t) forms.push_back(oracle::random_binary(rng, 1 + t % 6));
  const std::vector<std::uint64_t> moduli{2, 3, 4, 8, 9, 12, 16, 25, 27, 32, 36, 49, 60, 64, 81, 125};
  for (const auto& f : forms)
    for (std::uint64_t m : moduli) {
      INFO(f.to_string(), " mod ", m);
      CHECK(rho_binary(f, m) == Integer(static_cast<unsigned long>(oracle::rho_binary_scan(f, m))));
    }
}

TEST_CASE("rho_univariate against the full scan") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> coef(-20, 20), deg(1, 6);
  for (int t = 0; t < 60; ++t) {
    Polynomial g(deg(rng) + 1);
    for (auto& c : g) c = coef(rng);
    if (g.front() == 0) g.front() = 1;
    for (std::uint64_t m : {2ULL, 4ULL, 8ULL, 27ULL, 49ULL, 100ULL, 128ULL, 243ULL, 360ULL, 1024ULL})
      CHECK(rho_univariate(g, m) == oracle::rho_univariate_scan(g, m));
  }
  CHECK(rho_univariate({0}, 12) == 12);
  CHECK(rho_univariate({6, 0, 0}, 4) == 2);
}

TEST_CASE("roots modulo prime powers") {
  // (t - 1)^2 (t - 2) mod 3^e by scan
  const Polynomial g{1, -4, 5, -2};
  for (unsigned e = 1; e <= 6; ++e) {
    const std::uint64_t m = ipow_u64(3, e);
    std::uint64_t all = 0, multiples = 0;
    for (std::uint64_t t = 0; t < m; ++t) {
      Integer v = ((Integer(static_cast<unsigned long>(t)) - 1) * (Integer(static_cast<unsigned long>(t)) - 1)) *
                  (Integer(static_cast<unsigned long>(t)) - 2);
      if (v % Integer(static_cast<unsigned long>(m)) == 0) {
        ++all;
        if (t % 3 == 0) ++multiples;
      }
    }
    CHECK(count_roots_mod_prime_power(g, 3, e) == all);
    CHECK(count_roots_mod_prime_power(g, 3, e, true) == multiples);
  }
  CHECK_THROWS_AS(count_roots_mod_prime_power(g, 1000003, 5), RefusalError);
}

TEST_CASE("fixed power divisors") {
  CHECK(fixed_power_divisor(parse_binary_form("4x^6+4y^6"), 2) == std::optional<std::uint64_t>(2));
  CHECK_FALSE(fixed_power_divisor(parse_binary_form("x^2+y^2"), 2).has_value());
  CHECK_FALSE(fixed_power_divisor(parse_binary_form("x^3+2y^3"), 2).has_value());
  // x^2 y^2 (x + y)^2 ... every value is divisible by 4? x y (x + y) is always
  // even, so its square is divisible by 4.
  CHECK(fixed_power_divisor(parse_binary_form("x^4*y^2 + 2x^3*y^3 + x^2*y^4"), 2) == std::optional<std::uint64_t>(2));
  CHECK(fixed_power_divisor(parse_binary_form("9x^2 + 9y^2"), 2) == std::optional<std::uint64_t>(3));
}

TEST_CASE("densities") {
  const auto zero = density_binary(parse_binary_form("4x^6+4y^6"), 2, 100);
  CHECK(zero.partial_product == 0);
  CHECK(zero.float_value == 0.0);

  // g = x, k = 2: the partial product is prod (1 - 1/p^2), trending to 6/pi^2.
  const auto zeta = density_univariate({1, 0}, 2, 100000);
  Rational expect = 1;
  for (std::uint64_t p : primes_up_to(50)) expect *= Rational(Integer(static_cast<unsigned long>(p * p - 1)),
                                                              Integer(static_cast<unsigned long>(p * p)));
  CHECK(density_univariate({1, 0}, 2, 50).partial_product == expect);
  CHECK(std::abs(zeta.float_value - 6.0 / (std::numbers::pi * std::numbers::pi)) < 1e-5);

  // Every residue a root mod p^k: factor 0.
  CHECK(density_univariate({1, 0, -1, 0}, 2, 10).partial_product != 0);
  CHECK(density_univariate({4, 0, 0}, 2, 10).partial_product == 0);

  // Small prime bound, exact product against the scan oracle.
  const BinaryForm f = parse_binary_form("x^3+2y^3");
  Rational direct = 1;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL}) {
    const std::uint64_t m = p * p;
    Rational term(Integer(static_cast<unsigned long>(oracle::rho_binary_scan(f, m))),
                  Integer(static_cast<unsigned long>(m * m)));
    term.canonicalize();
    direct *= 1 - term;
  }
  const auto r = density_binary(f, 2, 12);
  CHECK(r.partial_product == direct);
  CHECK(r.prime_bound == 12);
  CHECK(r.float_value == doctest::Approx(direct.get_d()).epsilon(1e-12));
  CHECK(r.truncated);
  CHECK_FALSE(r.tail_note.empty());

  CHECK_THROWS_AS(density_binary(f, 1, 100), DomainError);
  CHECK_THROWS_AS(density_univariate({1, 0}, 2, 1), DomainError);
}

TEST_CASE("rho is multiplicative across coprime moduli") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<std::uint64_t> md(1, 60);
  std::uniform_int_distribution<int> coef(-9, 9);
  int done = 0;
  while (done < 200) {
    const std::uint64_t a = md(rng), b = md(rng);
    if (std::gcd(a, b) != 1) continue;
    ++done;
    const BinaryForm f = oracle::random_binary(rng, 1 + done % 6);
    CHECK(rho_binary(f, a * b) == rho_binary(f, a) * rho_binary(f, b));
    Polynomial g(1 + done % 5 + 1);
    for (auto& c : g) c = coef(rng);
    CHECK(rho_univariate(g, a * b) == rho_univariate(g, a) * rho_univariate(g, b));
  }
}

TEST_CASE("rho(p) is at most (D + 1) p away from bad primes") {
  std::mt19937_64 rng(59);
  int done = 0;
  while (done < 50) {
    const BinaryForm f = oracle::random_binary(rng, 1 + done % 6);
    if (f.discriminant() == 0) continue;
    ++done;
    const Integer bad = f.discriminant() * f.leading_x() * f.leading_y();
    for (std::uint64_t p : primes_up_to(50)) {
      if (bad % static_cast<unsigned long>(p) == 0) continue;
      CHECK(rho_binary(f, p) <= Integer(static_cast<unsigned long>((f.degree() + 1) * p)));
    }
  }
}

TEST_CASE("density values lie in [0, 1]") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const BinaryForm f = oracle::random_binary(rng, 1 + t % 6);
    for (unsigned k : {2U, 3U}) {
      const DensityResult r = density_binary(f, k, 200);
      CHECK(r.partial_product >= 0);
      CHECK(r.partial_product <= 1);
      CHECK(r.float_value >= 0.0);
      CHECK(r.float_value <= 1.0);
      // Zero exactly when some prime up to the bound is a fixed k-th power divisor.
      const auto fixed = fixed_power_divisor(f, k);
      CHECK((r.partial_product == 0) == (fixed.has_value() && *fixed <= 200));
    }
  }
}
