#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "wpdet/arith.hpp"
#include "wpdet/detmethod.hpp"
#include "wpdet/errors.hpp"
#include "wpdet/form_io.hpp"

using namespace wpdet;

namespace {

Surface sextic() { return make_surface(parse_binary_form("x^6+2y^6"), 2); }

std::uint64_t p_adic(const Integer& n, std::uint64_t p) {
  Integer m = abs(n);
  std::uint64_t v = 0;
  while (m % static_cast<unsigned long>(p) == 0) {
    m /= static_cast<unsigned long>(p);
    ++v;
  }
  return v;
}

}  // namespace

TEST_CASE("surface construction") {
  CHECK(sextic().weights() == WeightVector{1, 1, 2, 2});
  CHECK(make_surface(parse_binary_form("x^9+y^9"), 4).weights() == WeightVector{1, 1, 1, 2});
  CHECK_THROWS_AS(make_surface(parse_binary_form("x^6+2y^6"), 3), RegimeError);
  CHECK_THROWS_AS(make_surface(parse_binary_form("x^6+2y^6"), 1), RegimeError);
  CHECK(sextic().form.evaluate({1, 1, 3, 1}) == 0);
}

TEST_CASE("point enumeration matches the z scan") {
  const Surface X = sextic();
  CHECK(enumerate_points(X, Box{0, 10, 100, 10}, false).empty());
  for (bool prime_z : {false, true})
    for (const Box& box : {Box{12, 12, 5000000, 6}, Box{30, 30, 100000000, 3}, Box{8, 9, 1000, 1},
                           Box{50, 50, 70000000, 43}}) {
      const auto got = enumerate_points(X, box, prime_z);
      CHECK(got == oracle::scan_points(X.f, X.k, box, prime_z));
      for (const auto& pt : got) CHECK(X.form.evaluate({pt.x, pt.y, pt.v, pt.z}) == 0);
    }
  const Surface Y = make_surface(parse_binary_form("x^5 - 3x*y^4 + y^5"), 2);
  const Box box{25, 25, 1000000000, 16};
  CHECK(enumerate_points(Y, box, false) == oracle::scan_points(Y.f, Y.k, box, false));
}

TEST_CASE("enumeration under residue constraints") {
  const Surface X = sextic();
  const Box box{20, 20, 100000000, 1};
  const auto all = enumerate_points(X, box, false);
  const Residue target = reduce_point(X, all.front(), 7);
  const auto some = enumerate_points(X, box, false, {PrimeConstraint{7, target, true}});
  std::vector<LatticePoint> expect;
  for (const auto& pt : all)
    if (reduce_point(X, pt, 7) == target) expect.push_back(pt);
  CHECK(some == expect);
  CHECK(!some.empty());
}

TEST_CASE("reduction to canonical residues") {
  const Surface X = sextic();
  CHECK(reduce_point(X, LatticePoint{1, 4, 7, 2}, 3) == Residue{1, 1, 1, 2});
  CHECK(reduce_point(X, LatticePoint{2, 1, 3, 1}, 5) == Residue{1, 3, 2, 4});
  CHECK_THROWS_AS(reduce_point(X, LatticePoint{5, 10, 1, 1}, 5), DomainError);

  std::mt19937_64 rng(53);
  for (std::uint64_t p : {5ULL, 7ULL, 13ULL, 31ULL}) {
    std::uniform_int_distribution<std::uint64_t> u(0, p - 1), unit(1, p - 1);
    for (int t = 0; t < 200; ++t) {
      const Residue P{u(rng), unit(rng), u(rng), u(rng)};
      const std::uint64_t lambda = unit(rng);
      Residue Q;
      for (std::size_t i = 0; i < 4; ++i) Q[i] = mulmod(powmod(lambda, X.weights()[i], p), P[i], p);
      const Residue a = canonical_residue(X, P, p), b = canonical_residue(X, Q, p);
      CHECK(a == b);
      CHECK((a[0] == 1 || (a[0] == 0 && a[1] == 1)));
    }
  }
}

TEST_CASE("singular points and multiplicities") {
  const Surface X = sextic();
  CHECK_FALSE(is_singular_mod_p(X, Residue{1, 1, 3, 1}, 7));
  CHECK(multiplicity_mod_p(X, Residue{1, 1, 3, 1}, 7) == 1);
  CHECK_THROWS_AS(is_singular_mod_p(X, Residue{1, 1, 1, 1}, 7), DomainError);
  CHECK_THROWS_AS(multiplicity_mod_p(X, Residue{1, 1, 1, 1}, 7), DomainError);

  // f = x^5 + x^2 y^3 has a double root at x = 0; (0, 1, v, 0) is singular
  // for every v, with a quadratic leading term x^2 - v z^2.
  const Surface D = make_surface(parse_binary_form("x^5 + x^2*y^3"), 2);
  for (std::uint64_t v = 0; v < 7; ++v) {
    CHECK(is_singular_mod_p(D, Residue{0, 1, v, 0}, 7));
    CHECK(multiplicity_mod_p(D, Residue{0, 1, v, 0}, 7) == 2);
  }

  // Singularity by hand-written partials f_x, f_y, -z^k, -k v z^(k-1) over
  // every point mod p.
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL}) {
    for (std::uint64_t x = 0; x < p; ++x)
      for (std::uint64_t y = 0; y < p; ++y)
        for (std::uint64_t v = 0; v < p; ++v)
          for (std::uint64_t z = 0; z < p; ++z) {
            if (x == 0 && y == 0) continue;
            const Residue P{x, y, v, z};
            if (!on_surface_mod_p(D, P, p)) continue;
            const Integer X_(static_cast<unsigned long>(x)), Y_(static_cast<unsigned long>(y));
            const Integer fx = 5 * X_ * X_ * X_ * X_ + 2 * X_ * Y_ * Y_ * Y_;
            const Integer fy = 3 * X_ * X_ * Y_ * Y_;
            const Integer P_(static_cast<unsigned long>(p));
            const bool singular = fx % P_ == 0 && fy % P_ == 0 && z == 0;
            CHECK(is_singular_mod_p(D, P, p) == singular);
            CHECK((multiplicity_mod_p(D, P, p) == 1) == !singular);
          }
  }
}

TEST_CASE("point counts over F_p") {
  for (const Surface& X : {sextic(), make_surface(parse_binary_form("x^5 - x*y^4 + 3y^5"), 2)}) {
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
      // Orbits with (x, y) != 0 are free, with x = y = 0: the z-axis splits
      // into cosets of squares and the v-axis into gcd(d - 2k, p - 1) orbits.
      const std::uint64_t free_part = oracle::affine_count(X, p, true) / (p - 1);
      const std::uint64_t expect = free_part + 2 + std::gcd<std::uint64_t>(X.d() - 2 * X.k, p - 1);
      const FpPointCount c = count_Fp_points(X, p);
      CHECK(c.raw == expect);
      CHECK(c.n_p >= c.raw);
      const double d = X.d(), pd = static_cast<double>(p);
      CHECK(std::abs(static_cast<double>(c.n_p) - pd * pd) <= d * d * std::pow(pd, 1.5));
    }
  }
  CHECK_THROWS_AS(count_Fp_points(sextic(), 103), RefusalError);
  CHECK_NOTHROW(count_Fp_points(sextic(), 103, 103));
}

TEST_CASE("valuation bound A(s)") {
  CHECK(valuation_bound_A(0) == 0);
  CHECK(valuation_bound_A(1) == 0);
  CHECK(valuation_bound_A(3) == 2);
  CHECK(valuation_bound_A(6) == 8);
  CHECK(valuation_bound_A(10) == 20);
  Integer sum = 0;
  std::uint64_t t = 0, left = 1;
  for (std::uint64_t s = 1; s <= 200; ++s) {
    sum += static_cast<unsigned long>(t);
    CHECK(valuation_bound_A(s) == sum);
    if (--left == 0) left = ++t + 1;
  }
  // g(t) = 1: 0, 1, 2, 3, ...
  const MultiplicityGenerator one = [](std::uint64_t) { return std::uint64_t{1}; };
  CHECK(valuation_bound_A(5, one) == 10);
  CHECK(valuation_bound_A(100000000) > 0);
}

TEST_CASE("monomial matrices and nonleading bases") {
  const Surface X = sextic();
  const PrincipalIdeal I = X.ideal();
  for (unsigned u = 0; u <= 14; ++u) {
    const auto basis = nonleading_basis(X, u);
    CHECK(basis.size() == hilbert_function(I, u));
    for (const auto& e : basis) CHECK_FALSE(I.leading_monomial().divides(e));
    for (std::size_t i = 1; i < basis.size(); ++i)
      CHECK(compare_graded(basis[i - 1], basis[i], X.weights()) == std::strong_ordering::greater);
  }
  const auto pts = enumerate_points(X, Box{15, 15, 100000000, 1}, false);
  const auto basis = nonleading_basis(X, 3);
  const IntegerMatrix M = build_monomial_matrix(X, pts, basis);
  REQUIRE(M.rows() == basis.size());
  REQUIRE(M.cols() == pts.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t l = 0; l < pts.size(); ++l)
      CHECK(M(j, l) == WeightedForm::monomial(X.weights(), basis[j]).evaluate({pts[l].x, pts[l].y, pts[l].v, pts[l].z}));
  CHECK_THROWS_AS(build_monomial_matrix(X, pts, {ExponentVector{1, 0, 0, 0}, ExponentVector{2, 0, 0, 0}}),
                  DomainError);
}

TEST_CASE("p-adic divisibility of determinants") {
  const Surface X = sextic();
  const auto pts = enumerate_points(X, Box{60, 60, Integer("100000000000"), 1}, false);
  std::mt19937_64 rng(61);
  for (std::uint64_t p : {5ULL, 7ULL}) {
    const auto groups = group_by_residue(X, pts, p);
    std::uint64_t total = 0;
    for (const auto& g : groups) total += g.count;
    CHECK(total == pts.size());
    for (const auto& g : groups) {
      if (!g.nonsingular || g.count < 3) continue;
      std::vector<LatticePoint> cls;
      for (const auto& pt : pts)
        if (reduce_point(X, pt, p) == g.point) cls.push_back(pt);
      const std::size_t s = std::min<std::size_t>(cls.size(), 8);
      cls.resize(s);
      unsigned u = 0;
      while (nonleading_basis(X, u).size() < s) ++u;
      auto basis = nonleading_basis(X, u);
      std::shuffle(basis.begin(), basis.end(), rng);
      basis.resize(s);
      const IntegerMatrix M = build_monomial_matrix(X, cls, basis);
      const DivisibilityRecord rec = verify_padic_divisibility(M, p, {ResidueGroup{g.point, s, true}});
      CHECK(rec.determinant == oracle::determinant(M));
      CHECK(rec.bound == valuation_bound_A(s));
      CHECK(rec.pass);
      if (rec.determinant != 0) {
        REQUIRE(rec.valuation.has_value());
        CHECK(*rec.valuation == p_adic(rec.determinant, p));
        CHECK(*rec.valuation >= valuation_bound_A(s));
        // All s points share a residue, so p^(s - 1) divides as well.
        CHECK(*rec.valuation + 1 >= s);
      }
    }
  }

  IntegerMatrix one(1, 1);
  one(0, 0) = 7;
  const auto r1 = verify_padic_divisibility(one, 7, {ResidueGroup{Residue{1, 0, 0, 1}, 1, true}});
  CHECK(r1.bound == 0);
  CHECK(r1.pass);
  IntegerMatrix zero(2, 2);
  const auto r0 = verify_padic_divisibility(zero, 7, {ResidueGroup{Residue{1, 0, 0, 1}, 2, true}});
  CHECK(r0.pass);
  CHECK_FALSE(r0.valuation.has_value());
  IntegerMatrix id(3, 3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK_FALSE(verify_padic_divisibility(id, 5, {ResidueGroup{Residue{1, 0, 0, 1}, 3, true}}).pass);
  CHECK_FALSE(verify_padic_divisibility(id, 5, {ResidueGroup{Residue{1, 0, 0, 1}, 3, false}}).pass);
}

TEST_CASE("auxiliary forms") {
  const Surface X = sextic();
  const auto single = extract_auxiliary_form(X, {LatticePoint{1, 1, 3, 1}});
  CHECK(single.u == 1);
  CHECK(single.basis_size == 2);
  // Kernel normalisation puts a positive sign on the first basis element, y.
  const WeightedForm x = WeightedForm::monomial(X.weights(), ExponentVector{1, 0, 0, 0});
  const WeightedForm y = WeightedForm::monomial(X.weights(), ExponentVector{0, 1, 0, 0});
  CHECK(single.G == y - x);

  const auto empty = extract_auxiliary_form(X, {});
  CHECK(empty.u == 1);

  for (const Box& box : {Box{15, 15, 100000000, 1}, Box{40, 40, Integer("10000000000"), 3}}) {
    const auto pts = enumerate_points(X, box, false);
    const AuxiliaryForm aux = extract_auxiliary_form(X, pts);
    CHECK(hilbert_function(X.ideal(), aux.u) > pts.size());
    if (aux.u > 1) CHECK(hilbert_function(X.ideal(), aux.u - 1) <= pts.size());
    CHECK(aux.G.is_primitive());
    CHECK_FALSE(aux.G.is_zero());
    CHECK_FALSE(divides(X.form, aux.G));
    for (const auto& pt : pts) CHECK(aux.G.evaluate({pt.x, pt.y, pt.v, pt.z}) == 0);
  }
}

TEST_CASE("volume and weight logs") {
  const Surface X = sextic();
  const VW unit = compute_VW(X, Box{1, 1, 1, 1});
  CHECK(unit.log_V == 0.0);
  CHECK(unit.log_W == 0.0);
  // r = 2, prod w = 4, d = 6: log W = (3/2) sqrt(4/6) (a . log B)
  const VW v = compute_VW(X, LogBox{1.0, 2.0, 3.0, 4.0});
  CHECK(v.log_V == doctest::Approx(10.0));
  const double dot = 1.0 / 3 + 2.0 / 3 + 3.0 / 9 + 4.0 / 18;
  CHECK(v.log_W == doctest::Approx(1.5 * std::sqrt(4.0 / 6.0) * dot).epsilon(1e-12));
  CHECK_THROWS_AS(compute_VW(X, Box{0, 1, 1, 1}), DomainError);
}

TEST_CASE("prime selection") {
  const Surface X = sextic();
  const auto none = select_primes(X, 10000, 0.01);
  CHECK(none.primes.empty());
  CHECK(none.Q == 1);

  // Independent walk: primes above log B, skipping divisors of 1 and 2.
  const double logB = std::log(10000.0);
  std::vector<std::uint64_t> expect;
  Integer Q = 1;
  for (std::uint64_t p = 2;; ++p) {
    if (!oracle::naive_prime(Integer(static_cast<unsigned long>(p))) || static_cast<double>(p) <= logB || p == 2)
      continue;
    if (Q * static_cast<unsigned long>(p) >= 20000) break;
    Q *= static_cast<unsigned long>(p);
    expect.push_back(p);
  }
  const auto sel = select_primes(X, 10000, 1.0);
  CHECK(sel.primes == expect);
  CHECK(sel.Q == Q);
  CHECK(sel.primes == std::vector<std::uint64_t>{11, 13, 17});

  const Surface Y = make_surface(parse_binary_form("11x^6 + 13y^6"), 2);
  const auto skip = select_primes(Y, 10000, 2.0);
  for (std::uint64_t p : skip.primes) CHECK((p != 11 && p != 13 && p > logB));
}

TEST_CASE("box helpers") {
  CHECK(rational_power_floor(50, Rational(2)) == 2500);
  CHECK(rational_power_floor(1000000, Rational(1, 3)) == 100);
  CHECK(rational_power_floor(999999, Rational(1, 3)) == 99);
  CHECK(rational_power_floor(2, Rational(1, 2)) == 1);
  CHECK(rational_power_floor(8, Rational(2, 3)) == 4);
  CHECK(rational_power_floor(7, Rational(0)) == 1);
  // Every point in the box respects the cap: |v| z^k = |f(x, y)|.
  const Surface X = sextic();
  const Integer cap = v_cap(X, 30, 10);
  CHECK(cap == Integer(7 * 2) * ipow(Integer(30), 6) / 36);
  Integer worst = 0;
  for (long x = 1; x <= 30; ++x)
    for (long y = 1; y <= 30; ++y) worst = std::max(worst, Integer(abs(X.f.evaluate(x, y))));
  CHECK(worst / 36 <= cap);
}

TEST_CASE("pipeline") {
  const BinaryForm f = parse_binary_form("x^6+2y^6");
  const DetReport r = run_pipeline(f, 2, 50, Rational(1), true);
  CHECK(r.points.size() == 10);
  CHECK(r.all_pass());
  CHECK(r.vanishes == Verdict::pass);
  CHECK(r.not_divisible == Verdict::pass);
  CHECK(r.primitive == Verdict::pass);
  CHECK(r.degree_bound == Verdict::pass);
  const Surface X = make_surface(f, 2);
  CHECK(r.points == oracle::scan_points(f, 2, r.box, true));
  for (const auto& pt : r.points) CHECK(r.aux.G.evaluate({pt.x, pt.y, pt.v, pt.z}) == 0);
  for (const auto& cf : r.class_forms) {
    CHECK(cf.vanishes != Verdict::fail);
    CHECK(cf.primitive == Verdict::pass);
  }
  for (const auto& d : r.divisibility) CHECK(d.pass);

  const DetReport empty = run_pipeline(f, 2, 50, Rational(2), true);
  CHECK(empty.points.empty());
  CHECK(empty.vanishes == Verdict::vacuous);
  CHECK(empty.aux.u == 1);
  CHECK(empty.all_pass());

  CHECK_THROWS_AS(run_pipeline(f, 3, 50, Rational(2), true), RegimeError);
}

TEST_CASE("resultant coprimality") {
  const BinaryForm f = parse_binary_form("x^2+y^2");
  const auto self = resultant_coprimality(f, f);
  CHECK(self.resultant == 0);
  CHECK_FALSE(self.coprime);
  const auto xy = resultant_coprimality(f, parse_binary_form("x*y"));
  CHECK(xy.resultant == 1);
  CHECK(xy.coprime);

  std::mt19937_64 rng(67);
  for (int t = 0; t < 20; ++t) {
    const BinaryForm h = oracle::random_binary(rng, 3), g1 = oracle::random_binary(rng, 2),
                     g2 = oracle::random_binary(rng, 2);
    const BinaryForm prod(std::vector<Integer>{
        g1.coefficients()[0] * g2.coefficients()[0],
        g1.coefficients()[0] * g2.coefficients()[1] + g1.coefficients()[1] * g2.coefficients()[0],
        g1.coefficients()[0] * g2.coefficients()[2] + g1.coefficients()[1] * g2.coefficients()[1] +
            g1.coefficients()[2] * g2.coefficients()[0],
        g1.coefficients()[1] * g2.coefficients()[2] + g1.coefficients()[2] * g2.coefficients()[1],
        g1.coefficients()[2] * g2.coefficients()[2]});
    CHECK(resultant_coprimality(h, prod).resultant ==
          resultant_coprimality(h, g1).resultant * resultant_coprimality(h, g2).resultant);
  }
}
