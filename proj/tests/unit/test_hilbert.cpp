#include <doctest.h>

#include "oracles.hpp"
#include "wpdet/errors.hpp"
#include "wpdet/form_io.hpp"
#include "wpdet/hilbert.hpp"
#include "wpdet/parallel.hpp"

using namespace wpdet;

namespace {

PrincipalIdeal surface_ideal(const std::string& f, unsigned k) {
  const BinaryForm b = parse_binary_form(f);
  const unsigned d = b.degree();
  const WeightVector w{1, 1, d - 2 * k, 2};
  const std::vector<std::string> names{"x", "y", "v", "z"};
  return PrincipalIdeal(parse_weighted_form(f + " - v*z^" + std::to_string(k), w, names));
}

Rational ratio(long n, long d) {
  Rational r{Integer(n), Integer(d)};
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("small Hilbert functions") {
  const PrincipalIdeal conic(parse_weighted_form("x^2 + y^2", WeightVector{1, 1}, std::vector<std::string>{"x", "y"}));
  CHECK(hilbert_function(conic, 0) == 1);
  for (unsigned u = 1; u < 30; ++u) CHECK(hilbert_function(conic, u) == 2);

  const PrincipalIdeal F = surface_ideal("x^6+2y^6", 2);
  CHECK(F.leading_monomial() == ExponentVector{0, 0, 1, 2});
  CHECK(F.projective_dimension_plus_one() == 3);
  CHECK(hilbert_function(F, 6) == 29);
  CHECK(count_monomials(F.weights(), 6) == 30);
  for (std::size_t m = 0; m < 4; ++m) CHECK(sigma(F, m, 0) == 0);
}

TEST_CASE("Hilbert function matches the series expansion") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<unsigned> nd(2, 4), wd(1, 5), dd(1, 12);
  int tried = 0;
  while (tried < 40) {
    std::vector<unsigned> wv(nd(rng));
    for (auto& x : wv) x = wd(rng);
    const WeightVector w(wv);
    if (!w.is_well_formed()) continue;
    const unsigned d = dd(rng);
    if (count_monomials(w, d) == 0) continue;
    ++tried;
    const PrincipalIdeal I(oracle::random_form(rng, w, d));
    const auto series = oracle::hilbert_series(wv, d, 40);
    unsigned long long wsum = 0;
    for (unsigned x : wv) wsum += x;
    for (unsigned u = 0; u <= 40; ++u) {
      const HilbertRow row = hilbert_row(I, u);
      CHECK(Integer(static_cast<unsigned long>(row.h)) == series[u]);
      // Sum_m w_m sigma_m(u) = u H(u).
      unsigned long long lhs = 0;
      for (std::size_t m = 0; m < wv.size(); ++m) {
        lhs += wv[m] * row.sigma[m];
        CHECK(row.sigma[m] == sigma(I, m, u));
      }
      CHECK(lhs == static_cast<unsigned long long>(u) * row.h);
    }
  }
}

TEST_CASE("sigma by direct enumeration") {
  const PrincipalIdeal F = surface_ideal("x^6+2y^6", 2);
  const std::vector<unsigned> wv{1, 1, 2, 2};
  for (unsigned u = 0; u <= 20; ++u) {
    std::vector<std::uint64_t> expect(4, 0);
    std::uint64_t h = 0;
    for (const auto& e : oracle::monomials(wv, u)) {
      if (e[2] >= 1 && e[3] >= 2) continue;
      ++h;
      for (int m = 0; m < 4; ++m) expect[m] += e[m];
    }
    const HilbertRow row = hilbert_row(F, u);
    CHECK(row.h == h);
    CHECK(row.sigma == expect);
  }
}

TEST_CASE("a coefficients") {
  const PrincipalIdeal F = surface_ideal("x^6+2y^6", 2);
  CHECK(a_coefficient(F, 0) == Rational(1, 3));
  CHECK(a_coefficient(F, 1) == Rational(1, 3));
  CHECK(a_coefficient(F, 2) == Rational(1, 9));
  CHECK(a_coefficient(F, 3) == Rational(1, 18));
  CHECK_THROWS_AS(a_coefficient(F, 4), DimensionError);

  for (unsigned d = 5; d <= 20; ++d)
    for (unsigned k = 2; 2 * k < d; ++k) {
      std::string f = "x^" + std::to_string(d) + "+y^" + std::to_string(d);
      const PrincipalIdeal I = surface_ideal(f, k);
      Rational total = 0;
      for (std::size_t m = 0; m < 4; ++m) total += a_coefficient(I, m) * I.weights()[m];
      CHECK(total == 1);
      CHECK(a_coefficient(I, 2) == ratio(2 * k, 3 * d * (d - 2 * k)));
      CHECK(a_coefficient(I, 3) == ratio(d - 2 * k, 6 * d));
    }
}

TEST_CASE("sigma_m(u) / (u H(u)) approaches a_m") {
  const PrincipalIdeal F = surface_ideal("x^6+2y^6", 2);
  const HilbertRow row = hilbert_row(F, 200);
  for (std::size_t m = 0; m < 4; ++m) {
    const double ratio = static_cast<double>(row.sigma[m]) / (200.0 * static_cast<double>(row.h));
    CHECK(std::abs(ratio - a_coefficient(F, m).get_d()) <= 0.05);
  }
}

TEST_CASE("leading monomial xy at u = 3") {
  const PrincipalIdeal I(parse_weighted_form("x^2 + x*y", WeightVector{1, 1}, std::vector<std::string>{"x", "y"}));
  const HilbertRow row = hilbert_row(I, 3);
  CHECK(row.h == 2);  // x^3 and y^3
  CHECK(row.sigma == std::vector<std::uint64_t>{3, 3});
}

TEST_CASE("ideal construction errors") {
  CHECK_THROWS_AS(PrincipalIdeal(WeightedForm(WeightVector{1, 1})), DomainError);
}

TEST_CASE("thread count does not change the answer") {
  const PrincipalIdeal F = surface_ideal("x^9+y^9", 3);
  set_thread_count(1);
  const HilbertRow a = hilbert_row(F, 120);
  set_thread_count(4);
  const HilbertRow b = hilbert_row(F, 120);
  set_thread_count(0);
  CHECK(a.h == b.h);
  CHECK(a.sigma == b.sigma);
}
