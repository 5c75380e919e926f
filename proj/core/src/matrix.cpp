#include "wpdet/matrix.hpp"

#include <utility>

#include "wpdet/errors.hpp"

namespace wpdet {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntegerMatrix IntegerMatrix::transposed() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::select(const std::vector<std::size_t>& row_idx,
                                    const std::vector<std::size_t>& col_idx) const {
  IntegerMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      if (row_idx[i] >= rows_ || col_idx[j] >= cols_) throw DimensionError("select: index out of range");
      s(i, j) = (*this)(row_idx[i], col_idx[j]);
    }
  return s;
}

namespace {

struct Echelon {
  IntegerMatrix m;
  std::vector<std::size_t> pivot_cols;
  int sign = 1;
};

// Bareiss elimination to row echelon form. Every entry stays integral: the
// division by the previous pivot is exact.
Echelon bareiss(IntegerMatrix a) {
  Echelon out;
  const std::size_t rows = a.rows(), cols = a.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
      out.sign = -out.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.m = std::move(a);
  return out;
}

}  // namespace

Integer IntegerMatrix::determinant() const {
  if (!is_square()) throw DimensionError("determinant of a non-square matrix");
  if (rows_ == 0) return 1;
  Echelon e = bareiss(*this);
  if (e.pivot_cols.size() < rows_) return 0;
  Integer det = e.m(rows_ - 1, rows_ - 1);
  return e.sign < 0 ? Integer(-det) : det;
}

std::size_t IntegerMatrix::rank() const { return bareiss(*this).pivot_cols.size(); }

std::optional<std::vector<Integer>> IntegerMatrix::kernel_vector() const {
  Echelon e = bareiss(*this);
  const auto& piv = e.pivot_cols;
  std::size_t free_col = cols_;
  for (std::size_t c = 0, p = 0; c < cols_; ++c) {
    if (p < piv.size() && piv[p] == c) {
      ++p;
      continue;
    }
    free_col = c;
    break;
  }
  if (free_col == cols_) return std::nullopt;

  // Free variable set to 1, later free variables 0; pivots after free_col are
  // forced to 0 by the triangular structure, earlier ones by back substitution.
  std::vector<Rational> x(cols_, Rational(0));
  x[free_col] = 1;
  std::size_t npiv = 0;
  while (npiv < piv.size() && piv[npiv] < free_col) ++npiv;
  for (std::size_t ri = npiv; ri-- > 0;) {
    const std::size_t c = piv[ri];
    Rational acc = 0;
    for (std::size_t j = c + 1; j < cols_; ++j) {
      if (x[j] != 0) acc += Rational(e.m(ri, j)) * x[j];
    }
    x[c] = -acc / Rational(e.m(ri, c));
  }
  Integer lcm_den = 1;
  for (auto& q : x) {
    q.canonicalize();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<Integer> v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    Rational scaled = x[j] * Rational(lcm_den);
    scaled.canonicalize();
    v[j] = scaled.get_num();
  }
  return make_primitive(std::move(v));
}

std::vector<Integer> make_primitive(std::vector<Integer> v) {
  Integer g = 0;
  for (const auto& a : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  if (g == 0) return v;
  bool negate = false;
  for (const auto& a : v) {
    if (a != 0) {
      negate = a < 0;
      break;
    }
  }
  for (auto& a : v) {
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    if (negate) a = -a;
  }
  return v;
}

}  // namespace wpdet
