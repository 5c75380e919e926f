#include <doctest.h>

#include "oracles.hpp"
#include "wpdet/errors.hpp"
#include "wpdet/form_io.hpp"

using namespace wpdet;

TEST_CASE("binary forms from text") {
  CHECK(parse_binary_form("x^3+2y^3") == BinaryForm{1, 0, 0, 2});
  CHECK(parse_binary_form("x^3 + 2*y^3") == BinaryForm{1, 0, 0, 2});
  CHECK(parse_binary_form("x^2+y^2") == BinaryForm{1, 0, 1});
  CHECK(parse_binary_form("-x*y + 3x^2 - y^2") == BinaryForm{3, -1, -1});
  CHECK(parse_binary_form("x^6+2y^6") == BinaryForm{1, 0, 0, 0, 0, 0, 2});
  CHECK(parse_binary_form("coefs:1,0,0,2") == BinaryForm{1, 0, 0, 2});
  CHECK(parse_binary_form("coefs: 3, -1 ,-1") == BinaryForm{3, -1, -1});
  CHECK(parse_binary_form("x y^2 + x^2 y - x y^2") == BinaryForm{0, 1, 0, 0});
  CHECK(parse_binary_form("12345678901234567890x^2 - y^2").coefficients()[0] == Integer("12345678901234567890"));

  CHECK_THROWS_AS(parse_binary_form("x^3+y^2"), ParseError);
  CHECK_THROWS_AS(parse_binary_form("x^2+w^2"), ParseError);
  CHECK_THROWS_AS(parse_binary_form(""), ParseError);
  CHECK(parse_binary_form("x^2 y^2") == BinaryForm{0, 0, 1, 0, 0});
  CHECK_THROWS_AS(parse_binary_form("x^2 y^2 + x"), ParseError);
  CHECK_THROWS_AS(parse_binary_form("x^2 - x^2"), ParseError);
  CHECK_THROWS_AS(parse_binary_form("5"), ParseError);
  CHECK_THROWS_AS(parse_binary_form("coefs:7"), ParseError);
  CHECK_THROWS_AS(parse_binary_form("coefs:1,,2"), ParseError);
  CHECK_THROWS_AS(parse_binary_form("x^+y"), ParseError);
}

TEST_CASE("univariate polynomials") {
  CHECK(parse_univariate("x^2+1") == std::vector<Integer>{1, 0, 1});
  CHECK(parse_univariate("2 - x^3") == std::vector<Integer>{-1, 0, 0, 2});
  CHECK(parse_univariate("coefs:1,0,-2") == std::vector<Integer>{1, 0, -2});
  CHECK_THROWS_AS(parse_univariate("x^2+y"), ParseError);
}

TEST_CASE("weighted forms from text") {
  const WeightVector w{1, 1, 2, 2};
  const std::vector<std::string> names{"x", "y", "v", "z"};
  const WeightedForm F = parse_weighted_form("x^6 + 2y^6 - v*z^2", w, names);
  CHECK(F.terms().size() == 3);
  CHECK(*F.degree() == 6);
  CHECK(F.coefficient(ExponentVector{0, 0, 1, 2}) == -1);
  CHECK(F.evaluate({1, 1, 3, 1}) == 0);
  CHECK_THROWS_AS(parse_weighted_form("x^6 + v", w, names), ParseError);
  CHECK_THROWS_AS(parse_weighted_form("x", w, std::vector<std::string>{"x", "y"}), DimensionError);

  // Longest-match variable names.
  const std::vector<std::string> long_names{"x", "xx"};
  const WeightedForm g = parse_weighted_form("xx^2 + x*xx", WeightVector{1, 1}, long_names);
  CHECK(g.coefficient(ExponentVector{0, 2}) == 1);
  CHECK(g.coefficient(ExponentVector{1, 1}) == 1);
}

TEST_CASE("printing then parsing recovers the form") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> names{"x", "y", "v", "z"};
  for (int t = 0; t < 50; ++t) {
    const WeightVector w{1, 1, static_cast<unsigned>(1 + t % 5), 2};
    const WeightedForm f = oracle::random_form(rng, w, 1 + t % 9, 1000);
    CHECK(parse_weighted_form(f.to_string(names), w, names) == f);
  }
  for (int t = 0; t < 30; ++t) {
    const BinaryForm f = oracle::random_binary(rng, 1 + t % 8, 50);
    CHECK(parse_binary_form(f.to_string()) == f);
  }
}

TEST_CASE("weights") {
  CHECK(parse_weights("1,1,2,2") == WeightVector{1, 1, 2, 2});
  CHECK(parse_weights(" 3 ") == WeightVector{3});
  CHECK_THROWS_AS(parse_weights("1,0"), ParseError);
  CHECK_THROWS_AS(parse_weights("1,-2"), ParseError);
  CHECK_THROWS_AS(parse_weights("1,a"), ParseError);
  CHECK_THROWS_AS(parse_weights(""), ParseError);
}

TEST_CASE("JSON round trips") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const WeightVector w{1, 2, 3};
    const WeightedForm f = oracle::random_form(rng, w, 3 + t % 7, 100000);
    const auto j = to_json(f);
    CHECK(weighted_form_from_json(nlohmann::json::parse(j.dump())) == f);
    const BinaryForm b = oracle::random_binary(rng, 1 + t % 7, 100000);
    CHECK(binary_form_from_json(nlohmann::json::parse(to_json(b).dump())) == b);
  }
  CHECK_THROWS_AS(binary_form_from_json(nlohmann::json{{"degree", 3}, {"coefs", {"1", "2"}}}), ParseError);
  CHECK_THROWS_AS(binary_form_from_json(nlohmann::json{{"coefs", {"1", "2"}}}), ParseError);
  CHECK_THROWS_AS(weighted_form_from_json(nlohmann::json::object()), ParseError);
}
