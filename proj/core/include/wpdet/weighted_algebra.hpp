#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpdet/arith.hpp"

namespace wpdet {

/// Positive integer weights (w_0, ..., w_{r+1}) of a weighted projective space.
class WeightVector {
 public:
  explicit WeightVector(std::vector<unsigned> weights);
  WeightVector(std::initializer_list<unsigned> weights)
      : WeightVector(std::vector<unsigned>(weights)) {}

  std::size_t size() const { return weights_.size(); }
  unsigned operator[](std::size_t i) const { return weights_[i]; }
  std::span<const unsigned> values() const { return weights_; }

  /// Every subset of all-but-one weights has gcd 1.
  bool is_well_formed() const;
  /// w_0 = w_1 = 1, the standing assumption of the determinant method.
  bool has_unit_pair() const { return weights_.size() >= 2 && weights_[0] == 1 && weights_[1] == 1; }
  /// Product w_2 ... w_{r+1}.
  unsigned long long tail_product() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<unsigned> weights_;
};

inline bool is_well_formed(const WeightVector& w) { return w.is_well_formed(); }

/// Exponents (alpha_0, ..., alpha_{r+1}) of a monomial x^alpha.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<unsigned> exponents) : e_(std::move(exponents)) {}
  ExponentVector(std::initializer_list<unsigned> exponents) : e_(exponents) {}
  static ExponentVector zero(std::size_t n) { return ExponentVector(std::vector<unsigned>(n, 0)); }

  std::size_t size() const { return e_.size(); }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  unsigned& operator[](std::size_t i) { return e_[i]; }
  std::span<const unsigned> values() const { return e_; }
  unsigned total_degree() const;

  /// x^this divides x^other.
  bool divides(const ExponentVector& other) const;

  /// Lexicographic; a storage order for maps, not the graded order.
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<unsigned> e_;
};

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);

unsigned weighted_degree(const ExponentVector& e, const WeightVector& w);

/// The graded order: weighted degree first, ties broken by comparing the last
/// coordinate, then the one before it, and so on.
std::strong_ordering compare_graded(const ExponentVector& a, const ExponentVector& b,
                                    const WeightVector& w);

/// All exponent vectors of weighted degree u, sorted descending under
/// compare_graded.
std::vector<ExponentVector> enumerate_monomials(const WeightVector& w, unsigned u);

/// Number of monomials of weighted degree u (R(u)); R of a negative degree is 0.
std::uint64_t count_monomials(const WeightVector& w, long long u);

/// Sparse weighted homogeneous polynomial with integer coefficients. The zero
/// form has no degree (degree() is nullopt) and adopts the degree of the
/// first term added to it.
class WeightedForm {
 public:
  using Terms = std::map<ExponentVector, Integer>;

  explicit WeightedForm(WeightVector w) : weights_(std::move(w)) {}
  WeightedForm(WeightVector w, unsigned degree) : weights_(std::move(w)), degree_(degree) {}

  static WeightedForm monomial(const WeightVector& w, const ExponentVector& e, const Integer& c = 1);

  const WeightVector& weights() const { return weights_; }
  std::optional<unsigned> degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t arity() const { return weights_.size(); }

  /// Adds c x^e; throws DimensionError on length mismatch and DomainError
  /// if e has the wrong weighted degree.
  void add_term(const ExponentVector& e, const Integer& c);
  Integer coefficient(const ExponentVector& e) const;

  /// Term maximal under compare_graded. Throws DomainError on the zero form.
  std::pair<ExponentVector, Integer> leading_term() const;

  /// Exact value at an integer point; throws DimensionError on length mismatch.
  Integer evaluate(std::span<const Integer> point) const;
  Integer evaluate(std::initializer_list<Integer> point) const;
  /// Value modulo m in [0, m).
  std::uint64_t evaluate_mod(std::span<const std::uint64_t> point, std::uint64_t m) const;

  /// Formal partial derivative with respect to coordinate i.
  WeightedForm partial(std::size_t i) const;

  /// gcd of coefficients (0 for the zero form).
  Integer content() const;
  bool is_primitive() const { return content() == 1; }
  WeightedForm primitive_part() const;
  /// Largest coefficient in absolute value.
  Integer height() const;

  WeightedForm operator-() const;
  WeightedForm& operator+=(const WeightedForm& other);
  WeightedForm& operator-=(const WeightedForm& other);
  WeightedForm& operator*=(const Integer& c);
  friend WeightedForm operator+(WeightedForm a, const WeightedForm& b) { return a += b; }
  friend WeightedForm operator-(WeightedForm a, const WeightedForm& b) { return a -= b; }
  friend WeightedForm operator*(WeightedForm a, const Integer& c) { return a *= c; }
  friend WeightedForm operator*(const WeightedForm& a, const WeightedForm& b);

  friend bool operator==(const WeightedForm& a, const WeightedForm& b) {
    return a.weights_ == b.weights_ && a.terms_ == b.terms_ &&
           (a.is_zero() || a.degree_ == b.degree_);
  }

  /// Human-readable rendering with the given variable names.
  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

 private:
  void require_compatible(const WeightedForm& other) const;

  WeightVector weights_;
  std::optional<unsigned> degree_;
  Terms terms_;
};

/// Exact test of whether divisor | dividend, by repeated cancellation of
/// leading terms over the rationals.
bool divides(const WeightedForm& divisor, const WeightedForm& dividend);

/// Binary form sum_i a_i x^i y^(D-i), coefficients stored a_D, ..., a_0.
class BinaryForm {
 public:
  explicit BinaryForm(std::vector<Integer> coefs_high_to_low);
  BinaryForm(std::initializer_list<long> coefs_high_to_low);

  unsigned degree() const { return static_cast<unsigned>(coefs_.size() - 1); }
  /// a_D, ..., a_0.
  const std::vector<Integer>& coefficients() const { return coefs_; }
  /// Coefficient of x^i y^(D-i).
  const Integer& coefficient_of_x_power(unsigned i) const { return coefs_[degree() - i]; }
  const Integer& leading_x() const { return coefs_.front(); }
  const Integer& leading_y() const { return coefs_.back(); }
  bool is_zero() const;

  Integer evaluate(const Integer& x, const Integer& y) const;
  std::uint64_t evaluate_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) const;
  /// Largest coefficient in absolute value.
  Integer height() const;
  Integer content() const;

  /// Discriminant, normalised so that ax^2 + bxy + cy^2 has b^2 - 4ac.
  const Integer& discriminant() const { return discriminant_; }

  /// F(x, 1) and F(1, y) as univariate coefficient lists, low degree first.
  std::vector<Integer> dehomogenize_y() const;
  std::vector<Integer> dehomogenize_x() const;

  /// The form viewed over weights (1, 1).
  WeightedForm as_weighted() const;

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.coefs_ == b.coefs_; }

  std::string to_string() const;

 private:
  std::vector<Integer> coefs_;
  Integer discriminant_;
};

/// Resultant of two univariate polynomials given low degree first, via the
/// Sylvester determinant of their actual degrees.
Integer resultant(const std::vector<Integer>& f, const std::vector<Integer>& g);
/// Resultant of two binary forms with respect to their formal degrees.
Integer binary_resultant(const std::vector<Integer>& f_high_to_low,
                         const std::vector<Integer>& g_high_to_low);

struct Elimination {
  WeightedForm form;  // over (1, 1, 2)
  unsigned z_power;   // the minimal L
};

/// G(x, y, z) = z^L * Gstar(x, y, f(x, y) / z^k, z) with L minimal, for Gstar
/// over (1, 1, d - 2k, 2). The result has weighted degree 2L + deg Gstar.
Elimination eliminate_v(const WeightedForm& gstar, const BinaryForm& f, unsigned k);

}  // namespace wpdet
