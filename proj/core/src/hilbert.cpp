#include "wpdet/hilbert.hpp"

#include <thread>

#include "wpdet/errors.hpp"
#include "wpdet/parallel.hpp"

namespace wpdet {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1U, std::thread::hardware_concurrency());
  return n;
}

PrincipalIdeal::PrincipalIdeal(WeightedForm generator) : generator_(std::move(generator)) {
  if (generator_.is_zero()) throw DomainError("the zero form does not generate a principal ideal");
  leading_ = generator_.leading_term().first;
}

namespace {

struct Walker {
  const WeightVector& w;
  const ExponentVector& alpha;
  std::vector<unsigned> cur;
  HilbertRow& row;

  // below: some earlier coordinate already sits under alpha, so the monomial
  // survives regardless of the rest.
  void walk(std::size_t i, unsigned remaining, bool below) {
    const std::size_t n = w.size();
    if (i + 1 == n) {
      if (remaining % w[i] != 0) return;
      cur[i] = remaining / w[i];
      if (below || cur[i] < alpha[i]) {
        ++row.h;
        for (std::size_t m = 0; m < n; ++m) row.sigma[m] += cur[m];
      }
      return;
    }
    for (unsigned a = 0; a * w[i] <= remaining; ++a) {
      cur[i] = a;
      walk(i + 1, remaining - a * w[i], below || a < alpha[i]);
    }
  }
};

}  // namespace

HilbertRow hilbert_row(const PrincipalIdeal& ideal, unsigned u) {
  HilbertRow row;
  row.u = u;
  row.sigma.assign(ideal.weights().size(), 0);
  Walker walker{ideal.weights(), ideal.leading_monomial(),
                std::vector<unsigned>(ideal.weights().size(), 0), row};
  walker.walk(0, u, false);
  return row;
}

std::uint64_t hilbert_function(const PrincipalIdeal& ideal, unsigned u) { return hilbert_row(ideal, u).h; }

std::uint64_t sigma(const PrincipalIdeal& ideal, std::size_t m, unsigned u) {
  if (m >= ideal.weights().size()) throw DimensionError("coordinate index out of range");
  return hilbert_row(ideal, u).sigma[m];
}

Rational a_coefficient(const PrincipalIdeal& ideal, std::size_t m) {
  if (m >= ideal.weights().size()) throw DimensionError("coordinate index out of range");
  const unsigned d = ideal.degree();
  if (d == 0) throw DomainError("a-coefficients need a generator of positive degree");
  const unsigned wm = ideal.weights()[m];
  const long long num = static_cast<long long>(d) - static_cast<long long>(wm) * ideal.leading_monomial()[m];
  Rational a(Integer(static_cast<long>(num)),
             Integer(static_cast<unsigned long>(ideal.projective_dimension_plus_one() * wm * d)));
  a.canonicalize();
  return a;
}

}  // namespace wpdet
