#include <map>

#include "wpdet/detmethod.hpp"
#include "wpdet/errors.hpp"
#include "wpdet/parallel.hpp"

namespace wpdet {

Surface make_surface(BinaryForm f, unsigned k) {
  const unsigned d = f.degree();
  if (k < 2) throw RegimeError("the surface needs k >= 2");
  if (d < 2 * k + 1) throw RegimeError("the surface needs d - 2k >= 1 (d = " + std::to_string(d) +
                                       ", k = " + std::to_string(k) + ")");
  WeightVector w{1, 1, d - 2 * k, 2};
  WeightedForm form(w, 2 * k + (d - 2 * k));
  for (unsigned i = 0; i <= d; ++i) form.add_term(ExponentVector{i, d - i, 0, 0}, f.coefficient_of_x_power(i));
  form.add_term(ExponentVector{0, 0, 1, k}, -1);
  return Surface{std::move(f), k, std::move(form)};
}

namespace {

// Positive z with z^k | n, taken from the factorization of n.
void kth_root_divisors(const Factorization& fac, unsigned k, std::size_t i, const Integer& cur,
                       std::vector<Integer>& out) {
  if (i == fac.size()) {
    out.push_back(cur);
    return;
  }
  Integer z = cur;
  for (unsigned e = 0; e <= fac[i].exponent / k; ++e) {
    kth_root_divisors(fac, k, i + 1, z, out);
    z *= fac[i].prime;
  }
}

}  // namespace

std::vector<LatticePoint> enumerate_points(const Surface& X, const Box& box, bool z_prime_only,
                                           const std::vector<PrimeConstraint>& constraints) {
  if (box.Bx < 1 || box.By < 1 || box.Bz < 1 || box.Bv < 1) return {};
  const std::uint64_t bx = to_u64(box.Bx), by = to_u64(box.By);
  // Bz/2 < z <= Bz.
  const Integer z_lo = box.Bz / 2 + 1;
  std::vector<std::vector<LatticePoint>> rows(bx);
  parallel_for(bx, [&](unsigned, std::size_t row) {
    const Integer x = from_u64(row + 1);
    for (std::uint64_t yy = 1; yy <= by; ++yy) {
      const Integer y = from_u64(yy);
      if (gcd(x, y) != 1) continue;
      const Integer n = X.f.evaluate(x, y);
      if (n == 0) continue;
      std::vector<Integer> zs;
      const Factorization fac = factor(n);
      if (z_prime_only) {
        for (const auto& [p, e] : fac)
          if (e >= X.k) zs.push_back(p);
      } else {
        kth_root_divisors(fac, X.k, 0, Integer(1), zs);
      }
      for (const auto& z : zs) {
        if (z < z_lo || z > box.Bz) continue;
        Integer v = n / ipow(z, X.k);
        if (abs(v) > box.Bv) continue;
        LatticePoint pt{x, y, std::move(v), z};
        bool keep = true;
        for (const auto& c : constraints)
          if (reduce_point(X, pt, c.p) != c.point) {
            keep = false;
            break;
          }
        if (keep) rows[row].push_back(std::move(pt));
      }
    }
  });
  std::vector<LatticePoint> out;
  for (auto& r : rows)
    for (auto& pt : r) out.push_back(std::move(pt));
  std::sort(out.begin(), out.end());
  return out;
}

Integer v_cap(const Surface& X, const Integer& B, const Integer& Bz) {
  const Integer zmin = Bz / 2 + 1;
  Integer num = X.f.height() * (X.d() + 1) * ipow(B, X.d());
  Integer den = ipow(zmin, X.k);
  return num / den;
}

Integer rational_power_floor(const Integer& B, const Rational& beta) {
  if (beta < 0) throw DomainError("negative exponent");
  const Integer num = ipow(B, beta.get_num().get_ui());
  Integer root;
  mpz_root(root.get_mpz_t(), num.get_mpz_t(), beta.get_den().get_ui());
  return root;
}

}  // namespace wpdet
