#include "wpdet/weighted_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wpdet/errors.hpp"
#include "wpdet/matrix.hpp"

namespace wpdet {

WeightVector::WeightVector(std::vector<unsigned> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("weight vector must be nonempty");
  for (unsigned w : weights_)
    if (w == 0) throw DomainError("weights must be positive");
}

bool WeightVector::is_well_formed() const {
  const std::size_t n = weights_.size();
  if (n == 1) return weights_[0] == 1;
  for (std::size_t skip = 0; skip < n; ++skip) {
    unsigned g = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != skip) g = std::gcd(g, weights_[i]);
    if (g != 1) return false;
  }
  return true;
}

unsigned long long WeightVector::tail_product() const {
  unsigned long long p = 1;
  for (std::size_t i = 2; i < weights_.size(); ++i) p *= weights_[i];
  return p;
}

unsigned ExponentVector::total_degree() const {
  return std::accumulate(e_.begin(), e_.end(), 0U);
}

bool ExponentVector::divides(const ExponentVector& other) const {
  if (other.size() != size()) throw DimensionError("exponent vectors of different length");
  for (std::size_t i = 0; i < size(); ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw DimensionError("exponent vectors of different length");
  ExponentVector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

unsigned weighted_degree(const ExponentVector& e, const WeightVector& w) {
  if (e.size() != w.size()) throw DimensionError("exponent vector and weight vector differ in length");
  unsigned d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * w[i];
  return d;
}

std::strong_ordering compare_graded(const ExponentVector& a, const ExponentVector& b,
                                    const WeightVector& w) {
  if (a.size() != b.size()) throw DimensionError("exponent vectors of different length");
  const unsigned da = weighted_degree(a, w), db = weighted_degree(b, w);
  if (da != db) return da <=> db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

namespace {

// Fills coordinates from the highest weight downwards; the two weight-1
// leading coordinates (when present) close the recursion without branching.
void enumerate_into(const WeightVector& w, std::vector<std::size_t>& order, std::size_t depth,
                    unsigned remaining, ExponentVector& cur, std::vector<ExponentVector>& out) {
  const std::size_t idx = order[depth];
  const unsigned wi = w[idx];
  if (depth + 1 == order.size()) {
    if (remaining % wi == 0) {
      cur[idx] = remaining / wi;
      out.push_back(cur);
      cur[idx] = 0;
    }
    return;
  }
  for (unsigned a = 0; a * wi <= remaining; ++a) {
    cur[idx] = a;
    enumerate_into(w, order, depth + 1, remaining - a * wi, cur, out);
  }
  cur[idx] = 0;
}

}  // namespace

std::vector<ExponentVector> enumerate_monomials(const WeightVector& w, unsigned u) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  std::vector<ExponentVector> out;
  ExponentVector cur = ExponentVector::zero(w.size());
  enumerate_into(w, order, 0, u, cur, out);
  std::sort(out.begin(), out.end(), [&](const ExponentVector& a, const ExponentVector& b) {
    return compare_graded(a, b, w) == std::strong_ordering::greater;
  });
  return out;
}

std::uint64_t count_monomials(const WeightVector& w, long long u) {
  if (u < 0) return 0;
  // Coin-change recurrence; the same quantity as the x^u coefficient of
  // prod 1/(1 - x^{w_i}) but computed by dynamic programming.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(u) + 1, 0);
  ways[0] = 1;
  for (unsigned wi : w.values())
    for (long long t = wi; t <= u; ++t) ways[t] += ways[t - wi];
  return ways[u];
}

WeightedForm WeightedForm::monomial(const WeightVector& w, const ExponentVector& e, const Integer& c) {
  WeightedForm f(w);
  f.add_term(e, c);
  return f;
}

void WeightedForm::add_term(const ExponentVector& e, const Integer& c) {
  if (e.size() != weights_.size()) throw DimensionError("exponent length does not match weights");
  if (c == 0) return;
  const unsigned d = weighted_degree(e, weights_);
  if (!degree_) degree_ = d;
  if (*degree_ != d) throw DomainError("term of weighted degree " + std::to_string(d) +
                                       " added to a form of degree " + std::to_string(*degree_));
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer WeightedForm::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::pair<ExponentVector, Integer> WeightedForm::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero form");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
    if (compare_graded(it->first, best->first, weights_) == std::strong_ordering::greater) best = it;
  }
  return *best;
}

Integer WeightedForm::evaluate(std::span<const Integer> point) const {
  if (point.size() != weights_.size()) throw DimensionError("point length does not match weights");
  Integer total = 0, term, pw;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(pw.get_mpz_t(), point[i].get_mpz_t(), e[i]);
      term *= pw;
    }
    total += term;
  }
  return total;
}

Integer WeightedForm::evaluate(std::initializer_list<Integer> point) const {
  return evaluate(std::span<const Integer>(point.begin(), point.size()));
}

std::uint64_t WeightedForm::evaluate_mod(std::span<const std::uint64_t> point, std::uint64_t m) const {
  if (point.size() != weights_.size()) throw DimensionError("point length does not match weights");
  std::uint64_t total = 0;
  for (const auto& [e, c] : terms_) {
    std::uint64_t t = mod_u64(c, m);
    for (std::size_t i = 0; i < e.size() && t != 0; ++i)
      if (e[i]) t = mulmod(t, powmod(point[i] % m, e[i], m), m);
    total = (total + t) % m;
  }
  return total;
}

WeightedForm WeightedForm::partial(std::size_t i) const {
  if (i >= weights_.size()) throw DimensionError("partial: coordinate index out of range");
  WeightedForm out(weights_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    ExponentVector e2 = e;
    e2[i] -= 1;
    out.add_term(e2, c * e[i]);
  }
  if (out.is_zero() && degree_ && *degree_ >= weights_[i]) out.degree_ = *degree_ - weights_[i];
  return out;
}

Integer WeightedForm::content() const {
  Integer g = 0;
  for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

WeightedForm WeightedForm::primitive_part() const {
  Integer g = content();
  if (g == 0) return *this;
  WeightedForm out = *this;
  if (out.leading_term().second < 0) g = -g;
  for (auto& [e, c] : out.terms_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

Integer WeightedForm::height() const {
  Integer h = 0;
  for (const auto& [e, c] : terms_)
    if (abs(c) > h) h = abs(c);
  return h;
}

void WeightedForm::require_compatible(const WeightedForm& other) const {
  if (!(weights_ == other.weights_)) throw DimensionError("forms over different weight vectors");
  if (!is_zero() && !other.is_zero() && degree_ != other.degree_)
    throw DomainError("forms of different weighted degree");
}

WeightedForm WeightedForm::operator-() const {
  WeightedForm out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

WeightedForm& WeightedForm::operator+=(const WeightedForm& other) {
  require_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  if (!degree_) degree_ = other.degree_;
  return *this;
}

WeightedForm& WeightedForm::operator-=(const WeightedForm& other) {
  require_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  if (!degree_) degree_ = other.degree_;
  return *this;
}

WeightedForm& WeightedForm::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

WeightedForm operator*(const WeightedForm& a, const WeightedForm& b) {
  if (!(a.weights_ == b.weights_)) throw DimensionError("forms over different weight vectors");
  WeightedForm out(a.weights_);
  if (a.degree_ && b.degree_) out.degree_ = *a.degree_ + *b.degree_;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

namespace {

std::vector<std::string> default_names(std::size_t n) {
  switch (n) {
    case 2: return {"x", "y"};
    case 3: return {"x", "y", "z"};
    case 4: return {"x", "y", "v", "z"};
    default: {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
      return names;
    }
  }
}

}  // namespace

std::string WeightedForm::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<ExponentVector, Integer>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
    return compare_graded(a.first, b.first, weights_) == std::strong_ordering::greater;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    for (std::size_t i = 0; i < e.size(); ++i) has_var |= e[i] > 0;
    bool need_star = false;
    if (mag != 1 || !has_var) {
      os << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

std::string WeightedForm::to_string() const {
  auto names = default_names(weights_.size());
  return to_string(names);
}

bool divides(const WeightedForm& divisor, const WeightedForm& dividend) {
  if (divisor.is_zero()) throw DomainError("division by the zero form");
  if (dividend.is_zero()) return true;
  if (!(divisor.weights() == dividend.weights())) throw DimensionError("forms over different weight vectors");
  if (*dividend.degree() < *divisor.degree()) return false;
  const auto [lead_e, lead_c] = divisor.leading_term();
  // Work over Q by scaling the remainder, which keeps the test exact without
  // rational coefficients: r <- lead_c * r - c * x^(e - lead_e) * divisor.
  WeightedForm r = dividend;
  while (!r.is_zero()) {
    auto [e, c] = r.leading_term();
    if (!lead_e.divides(e)) return false;
    ExponentVector q = e;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= lead_e[i];
    WeightedForm step = WeightedForm::monomial(divisor.weights(), q, c) * divisor;
    r *= lead_c;
    r -= step;
    r = r.is_zero() ? r : r.primitive_part();
  }
  return true;
}

BinaryForm::BinaryForm(std::vector<Integer> coefs_high_to_low) : coefs_(std::move(coefs_high_to_low)) {
  if (coefs_.size() < 2) throw DomainError("binary form must have degree at least 1");
  const unsigned d = degree();
  if (d == 1) {
    discriminant_ = 1;
    return;
  }
  std::vector<Integer> fx, fy;
  for (unsigned j = 0; j < d; ++j) fx.push_back(coefs_[j] * (d - j));  // d/dx: a_i * i
  for (unsigned j = 1; j <= d; ++j) fy.push_back(coefs_[j] * j);      // d/dy: a_i * (D - i)
  Integer res = binary_resultant(fx, fy);
  Integer scale = ipow(Integer(d), d - 2);
  mpz_divexact(discriminant_.get_mpz_t(), res.get_mpz_t(), scale.get_mpz_t());
  if ((static_cast<unsigned long>(d) * (d - 1) / 2) % 2 == 1) discriminant_ = -discriminant_;
}

BinaryForm::BinaryForm(std::initializer_list<long> coefs_high_to_low)
    : BinaryForm([&] {
        std::vector<Integer> v;
        for (long c : coefs_high_to_low) v.emplace_back(c);
        return v;
      }()) {}

bool BinaryForm::is_zero() const {
  return std::all_of(coefs_.begin(), coefs_.end(), [](const Integer& c) { return c == 0; });
}

Integer BinaryForm::evaluate(const Integer& x, const Integer& y) const {
  Integer acc = coefs_[0], ypow = 1;
  for (std::size_t j = 1; j < coefs_.size(); ++j) {
    ypow *= y;
    acc = acc * x + coefs_[j] * ypow;
  }
  return acc;
}

std::uint64_t BinaryForm::evaluate_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) const {
  x %= m;
  y %= m;
  std::uint64_t acc = mod_u64(coefs_[0], m), ypow = 1 % m;
  for (std::size_t j = 1; j < coefs_.size(); ++j) {
    ypow = mulmod(ypow, y, m);
    acc = (mulmod(acc, x, m) + mulmod(mod_u64(coefs_[j], m), ypow, m)) % m;
  }
  return acc;
}

Integer BinaryForm::height() const {
  Integer h = 0;
  for (const auto& c : coefs_)
    if (abs(c) > h) h = abs(c);
  return h;
}

Integer BinaryForm::content() const {
  Integer g = 0;
  for (const auto& c : coefs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

std::vector<Integer> BinaryForm::dehomogenize_y() const {
  return std::vector<Integer>(coefs_.rbegin(), coefs_.rend());
}

std::vector<Integer> BinaryForm::dehomogenize_x() const { return coefs_; }

WeightedForm BinaryForm::as_weighted() const {
  WeightedForm f(WeightVector{1, 1}, degree());
  for (unsigned i = 0; i <= degree(); ++i) f.add_term(ExponentVector{i, degree() - i}, coefficient_of_x_power(i));
  return f;
}

std::string BinaryForm::to_string() const { return as_weighted().to_string(); }

namespace {

Integer sylvester_resultant(const std::vector<Integer>& f_high, const std::vector<Integer>& g_high) {
  const std::size_t m = f_high.size() - 1, n = g_high.size() - 1;
  IntegerMatrix s(m + n, m + n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) s(r, r + j) = f_high[j];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) s(n + r, r + j) = g_high[j];
  return s.determinant();
}

std::vector<Integer> strip_high(const std::vector<Integer>& low_to_high) {
  std::vector<Integer> high(low_to_high.rbegin(), low_to_high.rend());
  std::size_t lead = 0;
  while (lead < high.size() && high[lead] == 0) ++lead;
  return std::vector<Integer>(high.begin() + static_cast<long>(lead), high.end());
}

}  // namespace

Integer resultant(const std::vector<Integer>& f, const std::vector<Integer>& g) {
  auto fh = strip_high(f), gh = strip_high(g);
  if (fh.empty() || gh.empty()) return 0;
  return sylvester_resultant(fh, gh);
}

Integer binary_resultant(const std::vector<Integer>& f_high_to_low, const std::vector<Integer>& g_high_to_low) {
  if (f_high_to_low.empty() || g_high_to_low.empty()) throw DomainError("empty coefficient list");
  return sylvester_resultant(f_high_to_low, g_high_to_low);
}

Elimination eliminate_v(const WeightedForm& gstar, const BinaryForm& f, unsigned k) {
  if (k == 0) throw DomainError("eliminate_v: k must be positive");
  const unsigned d = f.degree();
  if (d < 2 * k + 1) throw RegimeError("eliminate_v: need d - 2k >= 1");
  const WeightVector surface_w{1, 1, d - 2 * k, 2};
  if (!(gstar.weights() == surface_w))
    throw DimensionError("eliminate_v: Gstar must live over (1, 1, d - 2k, 2)");
  const WeightVector plane{1, 1, 2};
  if (gstar.is_zero()) return {WeightedForm(plane), 0};

  // Laurent expansion in z: key (i, j, z-exponent).
  std::map<std::tuple<unsigned, unsigned, long>, Integer> laurent;
  std::vector<WeightedForm> fpow{WeightedForm::monomial(WeightVector{1, 1}, ExponentVector{0, 0})};
  const WeightedForm fw = f.as_weighted();
  for (const auto& [e, c] : gstar.terms()) {
    while (fpow.size() <= e[2]) fpow.push_back(fpow.back() * fw);
    const long zexp = static_cast<long>(e[3]) - static_cast<long>(k) * e[2];
    for (const auto& [fe, fc] : fpow[e[2]].terms()) {
      auto key = std::make_tuple(e[0] + fe[0], e[1] + fe[1], zexp);
      laurent[key] += c * fc;
    }
  }
  long min_z = 0;
  bool any = false;
  for (const auto& [key, c] : laurent) {
    if (c == 0) continue;
    min_z = any ? std::min(min_z, std::get<2>(key)) : std::get<2>(key);
    any = true;
  }
  const unsigned L = any && min_z < 0 ? static_cast<unsigned>(-min_z) : 0;
  WeightedForm g(plane, 2 * L + *gstar.degree());
  for (const auto& [key, c] : laurent) {
    if (c == 0) continue;
    auto [i, j, z] = key;
    g.add_term(ExponentVector{i, j, static_cast<unsigned>(z + static_cast<long>(L))}, c);
  }
  return {std::move(g), L};
}

}  // namespace wpdet
