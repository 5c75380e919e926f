#pragma once

#include <cstdint>
#include <vector>

#include "wpdet/weighted_algebra.hpp"

namespace wpdet {

/// The ideal generated by one nonzero weighted form, with its leading
/// monomial cached.
class PrincipalIdeal {
 public:
  explicit PrincipalIdeal(WeightedForm generator);

  const WeightedForm& generator() const { return generator_; }
  const WeightVector& weights() const { return generator_.weights(); }
  const ExponentVector& leading_monomial() const { return leading_; }
  unsigned degree() const { return *generator_.degree(); }
  /// Number of coordinates minus one (r + 1).
  std::size_t projective_dimension_plus_one() const { return weights().size() - 1; }

 private:
  WeightedForm generator_;
  ExponentVector leading_;
};

/// Hilbert function value together with every sigma_m at the same degree.
struct HilbertRow {
  unsigned u = 0;
  std::uint64_t h = 0;
  std::vector<std::uint64_t> sigma;
};

/// Counts and exponent sums over the monomials of degree u that the leading
/// monomial does not divide, in one enumeration pass.
HilbertRow hilbert_row(const PrincipalIdeal& ideal, unsigned u);

std::uint64_t hilbert_function(const PrincipalIdeal& ideal, unsigned u);
/// Sum of the m-th exponent over the monomials counted by hilbert_function.
std::uint64_t sigma(const PrincipalIdeal& ideal, std::size_t m, unsigned u);

/// (d - w_m alpha_m) / ((r + 1) w_m d).
Rational a_coefficient(const PrincipalIdeal& ideal, std::size_t m);

}  // namespace wpdet
