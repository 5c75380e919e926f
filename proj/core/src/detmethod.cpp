#include "wpdet/detmethod.hpp"

#include <cmath>
#include <map>

#include "wpdet/errors.hpp"
#include "wpdet/exponents.hpp"

namespace wpdet {

MultiplicityGenerator nonsingular_surface_generator() {
  return [](std::uint64_t t) { return t + 1; };
}

Integer valuation_bound_A(std::uint64_t s, const MultiplicityGenerator& g) {
  Integer total = 0;
  std::uint64_t left = s;
  for (std::uint64_t t = 0; left > 0; ++t) {
    const std::uint64_t take = std::min(left, g(t));
    total += from_u64(t) * from_u64(take);
    left -= take;
  }
  return total;
}

std::vector<ExponentVector> nonleading_basis(const Surface& X, unsigned u) {
  const ExponentVector lead{0, 0, 1, X.k};
  std::vector<ExponentVector> out;
  for (auto& e : enumerate_monomials(X.weights(), u))
    if (!lead.divides(e)) out.push_back(std::move(e));
  return out;
}

IntegerMatrix build_monomial_matrix(const Surface& X, const std::vector<LatticePoint>& points,
                                    const std::vector<ExponentVector>& monomials) {
  if (!monomials.empty()) {
    const unsigned u = weighted_degree(monomials.front(), X.weights());
    for (const auto& m : monomials)
      if (weighted_degree(m, X.weights()) != u) throw DomainError("monomials of different weighted degree");
  }
  IntegerMatrix M(monomials.size(), points.size());
  for (std::size_t l = 0; l < points.size(); ++l) {
    const auto c = points[l].coords();
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      Integer val = 1;
      for (std::size_t i = 0; i < 4; ++i)
        if (monomials[j][i] != 0) val *= ipow(c[i], monomials[j][i]);
      M(j, l) = std::move(val);
    }
  }
  return M;
}

DivisibilityRecord verify_padic_divisibility(const IntegerMatrix& M, std::uint64_t p,
                                             const std::vector<ResidueGroup>& groups) {
  if (!M.is_square()) throw DimensionError("determinant of a non-square matrix");
  DivisibilityRecord rec;
  rec.p = p;
  rec.s = M.rows();
  rec.determinant = M.determinant();
  rec.bound = 0;
  for (const auto& g : groups) {
    if (g.count == 0) continue;
    rec.bound += g.nonsingular ? valuation_bound_A(g.count) : Integer(from_u64(g.count - 1));
  }
  if (rec.determinant == 0) {
    rec.pass = true;
  } else {
    rec.valuation = valuation(rec.determinant, from_u64(p));
    rec.pass = Integer(static_cast<unsigned long>(*rec.valuation)) >= rec.bound;
  }
  return rec;
}

std::vector<ResidueGroup> group_by_residue(const Surface& X, const std::vector<LatticePoint>& points,
                                           std::uint64_t p) {
  std::vector<ResidueGroup> groups;
  std::map<Residue, std::size_t> index;
  for (const auto& pt : points) {
    const Residue r = reduce_point(X, pt, p);
    auto [it, inserted] = index.try_emplace(r, groups.size());
    if (inserted) groups.push_back({r, 0, !is_singular_mod_p(X, r, p)});
    ++groups[it->second].count;
  }
  return groups;
}

AuxiliaryForm extract_auxiliary_form(const Surface& X, const std::vector<LatticePoint>& points) {
  const PrincipalIdeal I = X.ideal();
  unsigned u = 1;
  while (hilbert_function(I, u) <= points.size()) ++u;
  const auto basis = nonleading_basis(X, u);
  const IntegerMatrix M = build_monomial_matrix(X, points, basis).transposed();
  const auto kernel = M.kernel_vector();
  if (!kernel) throw DomainError("no kernel vector although the basis exceeds the point count");
  WeightedForm G(X.weights(), u);
  for (std::size_t j = 0; j < basis.size(); ++j) G.add_term(basis[j], (*kernel)[j]);
  return AuxiliaryForm{std::move(G), u, basis.size()};
}

VW compute_VW(const Surface& X, const LogBox& box) {
  const PrincipalIdeal I = X.ideal();
  const double logs[4] = {box.x, box.y, box.v, box.z};
  VW out;
  double weighted = 0.0;
  for (std::size_t m = 0; m < 4; ++m) {
    out.log_V += logs[m];
    weighted += a_coefficient(I, m).get_d() * logs[m];
  }
  const double r = static_cast<double>(X.weights().size()) - 2.0;
  const double w = static_cast<double>(X.weights().tail_product());
  out.log_W = (r + 1.0) / r * std::pow(w / X.d(), 1.0 / r) * weighted;
  return out;
}

VW compute_VW(const Surface& X, const Box& box) {
  auto lg = [](const Integer& b) {
    if (b < 1) throw DomainError("box sides must be at least 1");
    long exp2;
    const double mant = mpz_get_d_2exp(&exp2, b.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
  };
  return compute_VW(X, LogBox{lg(box.Bx), lg(box.By), lg(box.Bv), lg(box.Bz)});
}

PrimeSelection select_primes(const Surface& X, const Integer& B, double psi) {
  if (B < 2) throw DomainError("prime selection needs B >= 2");
  long exp2;
  const double mant = mpz_get_d_2exp(&exp2, B.get_mpz_t());
  const long double logB = std::log(static_cast<long double>(mant)) + exp2 * std::log(2.0L);
  const long double target = std::log(2.0L) + static_cast<long double>(psi) * logB;  // log(2 B^psi)
  const Integer& ad = X.f.leading_x();
  const Integer& a0 = X.f.leading_y();
  PrimeSelection sel;
  long double logQ = 0.0L;
  std::uint64_t p = static_cast<std::uint64_t>(std::floor(logB));
  while (true) {
    p = next_prime(p);
    const Integer P = from_u64(p);
    if (ad % P == 0 || a0 % P == 0) continue;
    const long double next = logQ + std::log(static_cast<long double>(p));
    if (next >= target) break;
    logQ = next;
    sel.primes.push_back(p);
    sel.Q *= P;
  }
  return sel;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
  }
  return "fail";
}

bool DetReport::all_pass() const {
  for (Verdict v : {vanishes, not_divisible, primitive, degree_bound, divisibility_verdict})
    if (v == Verdict::fail) return false;
  for (const auto& c : class_forms)
    for (Verdict v : {c.vanishes, c.not_divisible, c.primitive})
      if (v == Verdict::fail) return false;
  return true;
}

namespace {

Verdict vanishing_verdict(const WeightedForm& G, const std::vector<LatticePoint>& points) {
  if (points.empty()) return Verdict::vacuous;
  for (const auto& pt : points) {
    const auto c = pt.coords();
    if (G.evaluate(c) != 0) return Verdict::fail;
  }
  return Verdict::pass;
}

Verdict verdict(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

// Square check on up to `cap` points: s points against the first s basis
// monomials of the least degree u with H(u) >= s.
DivisibilityRecord square_check(const Surface& X, std::vector<LatticePoint> pts, std::uint64_t p,
                                std::size_t cap) {
  if (pts.size() > cap) pts.resize(cap);
  const PrincipalIdeal I = X.ideal();
  unsigned u = 0;
  while (hilbert_function(I, u) < pts.size()) ++u;
  auto basis = nonleading_basis(X, u);
  basis.resize(pts.size());
  return verify_padic_divisibility(build_monomial_matrix(X, pts, basis), p, group_by_residue(X, pts, p));
}

}  // namespace

DetReport run_pipeline(const BinaryForm& f, unsigned k, const Integer& B, const Rational& beta,
                       bool z_prime_only, const PipelineOptions& options) {
  const Surface X = make_surface(f, k);
  if (B < 2) throw DomainError("the pipeline needs B >= 2");
  if (beta <= 0) throw DomainError("beta must be positive");
  DetReport rep{.f = f, .k = k, .B = B, .beta = beta, .z_prime_only = z_prime_only};
  rep.max_p = options.max_p;

  const unsigned d = X.d();
  const Integer Bz = rational_power_floor(B, beta);
  const Rational v_exp = Rational(d) - Rational(k) * beta;
  rep.nominal_Bv = v_exp >= 0 ? rational_power_floor(B, v_exp) : Integer(0);
  rep.box = Box{B, B, v_cap(X, B, Bz), Bz};
  rep.points = enumerate_points(X, rep.box, z_prime_only);

  rep.psi = psi(d, k, beta);
  const double logB = std::log(B.get_d());
  const VW vw = compute_VW(X, LogBox{logB, logB, v_exp.get_d() * logB, beta.get_d() * logB});
  rep.log_W_over_log_B = vw.log_W / logB;
  rep.selection = select_primes(X, B, rep.psi);
  for (auto p : rep.selection.primes)
    if (p <= options.max_p) rep.verified_primes.push_back(p);

  // Full point set.
  rep.aux = extract_auxiliary_form(X, rep.points);
  rep.monomials = nonleading_basis(X, rep.aux.u);
  rep.vanishes = vanishing_verdict(rep.aux.G, rep.points);
  rep.not_divisible = verdict(!divides(X.form, rep.aux.G));
  rep.primitive = verdict(rep.aux.G.is_primitive());
  // Least u with R(u) - R(u - d) > s, counted independently of the enumeration.
  unsigned u_min = 1;
  while (count_monomials(X.weights(), u_min) - count_monomials(X.weights(), static_cast<long long>(u_min) - d) <=
         rep.points.size())
    ++u_min;
  rep.degree_bound = verdict(rep.aux.u <= u_min);

  // Residue-level divisibility per selected prime: one check per residue
  // class and one combined check across classes.
  for (auto p : rep.verified_primes) {
    std::map<Residue, std::vector<LatticePoint>> classes;
    for (const auto& pt : rep.points) classes[reduce_point(X, pt, p)].push_back(pt);
    for (const auto& [r, pts] : classes) rep.divisibility.push_back(square_check(X, pts, p, options.max_class_size));
    if (classes.size() > 1) rep.divisibility.push_back(square_check(X, rep.points, p, options.max_class_size));
  }
  if (!rep.divisibility.empty()) {
    rep.divisibility_verdict = Verdict::pass;
    for (const auto& r : rep.divisibility)
      if (!r.pass) rep.divisibility_verdict = Verdict::fail;
  }

  // One refinement stage: an auxiliary form per residue class of the first
  // selected prime.
  if (!rep.verified_primes.empty()) {
    const std::uint64_t p = rep.verified_primes.front();
    for (const auto& g : group_by_residue(X, rep.points, p)) {
      std::vector<LatticePoint> pts;
      for (const auto& pt : rep.points)
        if (reduce_point(X, pt, p) == g.point) pts.push_back(pt);
      ClassForm c{p, g.point, g.count, extract_auxiliary_form(X, pts), Verdict::fail, Verdict::fail, Verdict::fail};
      c.vanishes = vanishing_verdict(c.aux.G, pts);
      c.not_divisible = verdict(!divides(X.form, c.aux.G));
      c.primitive = verdict(c.aux.G.is_primitive());
      rep.class_forms.push_back(std::move(c));
    }
  }
  return rep;
}

ResultantCheck resultant_coprimality(const BinaryForm& f, const BinaryForm& G1) {
  if (f.is_zero() || G1.is_zero()) throw DomainError("resultant of a zero form");
  Integer r = resultant(f.dehomogenize_y(), G1.dehomogenize_y());
  const bool coprime = r != 0;
  return {std::move(r), coprime};
}

}  // namespace wpdet
