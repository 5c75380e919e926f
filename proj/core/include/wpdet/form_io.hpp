#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "wpdet/weighted_algebra.hpp"

namespace wpdet {

/// Parses a binary form over x, y. Accepts either "coefs:a_D,...,a_0" or the
/// polynomial grammar documented in docs/form_syntax.md, e.g. "x^3+2y^3".
BinaryForm parse_binary_form(const std::string& text);

/// Parses a univariate integer polynomial in x (or "coefs:a_n,...,a_0").
/// Returns coefficients high degree first.
std::vector<Integer> parse_univariate(const std::string& text);

/// Parses a weighted form over the given variable names; every term must have
/// the same weighted degree.
WeightedForm parse_weighted_form(const std::string& text, const WeightVector& w,
                                 std::span<const std::string> names);

/// Comma-separated positive integers, e.g. "1,1,2,2".
WeightVector parse_weights(const std::string& text);

/// {weights: [...], degree: n, terms: [{exp: [...], coef: "decimal"}]}
nlohmann::json to_json(const WeightedForm& f);
WeightedForm weighted_form_from_json(const nlohmann::json& j);

/// {degree: D, coefs: ["a_D", ..., "a_0"]}
nlohmann::json to_json(const BinaryForm& f);
BinaryForm binary_form_from_json(const nlohmann::json& j);

}  // namespace wpdet
