#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wpdet/hilbert.hpp"
#include "wpdet/matrix.hpp"
#include "wpdet/weighted_algebra.hpp"

namespace wpdet {

/// f(x, y) = v z^k in P(1, 1, d - 2k, 2).
struct Surface {
  BinaryForm f;
  unsigned k;
  WeightedForm form;  // f(x, y) - v z^k

  unsigned d() const { return f.degree(); }
  const WeightVector& weights() const { return form.weights(); }
  PrincipalIdeal ideal() const { return PrincipalIdeal(form); }
};

/// Throws RegimeError unless k >= 2 and d - 2k >= 1.
Surface make_surface(BinaryForm f, unsigned k);

struct Box {
  Integer Bx, By, Bv, Bz;
};

/// Natural logs of the box sides; used where the sides are real powers of B.
struct LogBox {
  double x, y, v, z;
};

struct LatticePoint {
  Integer x, y, v, z;

  std::array<Integer, 4> coords() const { return {x, y, v, z}; }
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
    return std::tie(a.x, a.y, a.v, a.z) < std::tie(b.x, b.y, b.v, b.z);
  }
};

/// (x, y, v, z) modulo p.
using Residue = std::array<std::uint64_t, 4>;

struct PrimeConstraint {
  std::uint64_t p;
  Residue point;
  bool nonsingular;
};

/// Points with 1 <= x <= Bx, 1 <= y <= By, gcd(x, y) = 1, Bz/2 < z <= Bz (z
/// prime when requested), 0 < |v| <= Bv and f(x, y) = v z^k, reducing to the
/// given residue points. Sorted lexicographically.
std::vector<LatticePoint> enumerate_points(const Surface& X, const Box& box, bool z_prime_only,
                                           const std::vector<PrimeConstraint>& constraints = {});

/// Canonical representative in P(w)(F_p): scaled so the first weight-one
/// coordinate that is nonzero mod p becomes 1. Throws DomainError when p
/// divides both x and y.
Residue reduce_point(const Surface& X, const LatticePoint& xi, std::uint64_t p);
Residue canonical_residue(const Surface& X, const Residue& P, std::uint64_t p);

bool on_surface_mod_p(const Surface& X, const Residue& P, std::uint64_t p);

/// All four partials of f - v z^k vanish at P. Throws DomainError if P is not
/// on X mod p.
bool is_singular_mod_p(const Surface& X, const Residue& P, std::uint64_t p);

/// Lowest degree of a nonzero term of the local expansion at P, taken in the
/// weight-one chart of P. Points with x = y = 0 use the expansion on the
/// affine cone. Throws DomainError if P is not on X mod p.
unsigned multiplicity_mod_p(const Surface& X, const Residue& P, std::uint64_t p);

struct FpPointCount {
  std::uint64_t raw = 0;  // points of X over F_p
  std::uint64_t n_p = 0;  // sum of multiplicities
};

/// Exhaustive orbit enumeration of P(w)(F_p); RefusalError when p > cap.
FpPointCount count_Fp_points(const Surface& X, std::uint64_t p, std::uint64_t cap = 101);

/// Number of times each t >= 0 occurs in the sequence whose first s terms are
/// summed by valuation_bound_A.
using MultiplicityGenerator = std::function<std::uint64_t(std::uint64_t)>;
MultiplicityGenerator nonsingular_surface_generator();

/// n_1 + ... + n_s for the nondecreasing sequence listing each t exactly g(t)
/// times; for g(t) = t + 1 this is 0, 1, 1, 2, 2, 2, ...
Integer valuation_bound_A(std::uint64_t s, const MultiplicityGenerator& g = nonsingular_surface_generator());

/// Rows indexed by monomials, columns by points; entry M_j(xi_l). Throws
/// DomainError if the monomials do not share one weighted degree.
IntegerMatrix build_monomial_matrix(const Surface& X, const std::vector<LatticePoint>& points,
                                    const std::vector<ExponentVector>& monomials);

/// Degree-u monomials not divisible by v z^k, descending in the graded order.
std::vector<ExponentVector> nonleading_basis(const Surface& X, unsigned u);

struct ResidueGroup {
  Residue point;
  std::uint64_t count;
  bool nonsingular;
};

struct DivisibilityRecord {
  std::uint64_t p = 0;
  std::uint64_t s = 0;
  Integer determinant;
  std::optional<unsigned long> valuation;  // nullopt when the determinant is 0
  Integer bound;
  bool pass = false;
};

/// v_p(det M) against sum over groups of A(s_P); singular groups contribute
/// the elementary s_P - 1. Passes when the determinant is zero.
DivisibilityRecord verify_padic_divisibility(const IntegerMatrix& M, std::uint64_t p,
                                             const std::vector<ResidueGroup>& groups);

/// Groups points by reduction mod p, in order of first appearance.
std::vector<ResidueGroup> group_by_residue(const Surface& X, const std::vector<LatticePoint>& points,
                                           std::uint64_t p);

struct AuxiliaryForm {
  WeightedForm G;
  unsigned u = 0;          // minimal degree with H(u) > #points
  std::size_t basis_size = 0;
};

/// A primitive form of minimal degree u with H(u) > #points, built from
/// monomials not divisible by v z^k, vanishing at every point.
AuxiliaryForm extract_auxiliary_form(const Surface& X, const std::vector<LatticePoint>& points);

struct VW {
  double log_V = 0.0;
  double log_W = 0.0;
};

/// log V = sum log B_m; log W = ((r+1)/r)(w/d)^{1/r} sum a_m log B_m.
VW compute_VW(const Surface& X, const LogBox& box);
VW compute_VW(const Surface& X, const Box& box);

struct PrimeSelection {
  std::vector<std::uint64_t> primes;
  Integer Q = 1;
};

/// Consecutive primes above log B, skipping those dividing the x^d or y^d
/// coefficient of f, stopping at the last Q_t with Q_t < 2 B^psi.
PrimeSelection select_primes(const Surface& X, const Integer& B, double psi);

/// Largest |v| a point in the box can have: (d + 1) ||f|| Bx^d / floor(Bz/2 + 1)^k.
Integer v_cap(const Surface& X, const Integer& B, const Integer& Bz);

/// floor(B^beta) for rational beta >= 0.
Integer rational_power_floor(const Integer& B, const Rational& beta);

enum class Verdict { pass, fail, vacuous };
std::string to_string(Verdict v);

struct ClassForm {
  std::uint64_t p;
  Residue point;
  std::uint64_t s;
  AuxiliaryForm aux{WeightedForm(WeightVector{1, 1}), 0, 0};
  Verdict vanishes;
  Verdict not_divisible;
  Verdict primitive;
};

struct DetReport {
  BinaryForm f;
  unsigned k = 0;
  Integer B;
  Rational beta;
  bool z_prime_only = true;
  Box box;
  Integer nominal_Bv;  // B^(d - k beta), rounded down
  std::vector<LatticePoint> points;
  double psi = 0.0;
  double log_W_over_log_B = 0.0;
  PrimeSelection selection;
  std::uint64_t max_p = 0;
  std::vector<std::uint64_t> verified_primes;
  std::vector<DivisibilityRecord> divisibility;
  AuxiliaryForm aux{WeightedForm(WeightVector{1, 1}), 0, 0};
  std::vector<ExponentVector> monomials;
  std::vector<ClassForm> class_forms;
  Verdict vanishes = Verdict::vacuous;
  Verdict not_divisible = Verdict::fail;
  Verdict primitive = Verdict::fail;
  Verdict degree_bound = Verdict::fail;
  Verdict divisibility_verdict = Verdict::vacuous;

  bool all_pass() const;
};

struct PipelineOptions {
  /// Primes above this are selected but not used for residue-level checks.
  std::uint64_t max_p = 101;
  /// Largest residue class used for one determinant check.
  std::size_t max_class_size = 12;
};

DetReport run_pipeline(const BinaryForm& f, unsigned k, const Integer& B, const Rational& beta,
                       bool z_prime_only, const PipelineOptions& options = {});

struct ResultantCheck {
  Integer resultant;
  bool coprime;
};

/// Res(f(x, 1), G1(x, 1)); coprime iff nonzero.
ResultantCheck resultant_coprimality(const BinaryForm& f, const BinaryForm& G1);

}  // namespace wpdet
