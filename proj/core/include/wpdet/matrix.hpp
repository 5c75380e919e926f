#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wpdet/arith.hpp"

namespace wpdet {

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntegerMatrix transposed() const;
  /// Submatrix on the given row and column index lists, in that order.
  IntegerMatrix select(const std::vector<std::size_t>& row_idx,
                       const std::vector<std::size_t>& col_idx) const;

  /// Exact determinant by Bareiss fraction-free elimination. Throws
  /// DimensionError on non-square input; the 0x0 determinant is 1.
  Integer determinant() const;
  std::size_t rank() const;

  /// A nonzero integer vector v with (*this) v = 0, or nullopt when the
  /// columns are independent. Taken from the first non-pivot column of the
  /// fraction-free echelon form, primitive, with its first nonzero entry > 0.
  std::optional<std::vector<Integer>> kernel_vector() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Content-free copy of v with the first nonzero entry positive.
std::vector<Integer> make_primitive(std::vector<Integer> v);

}  // namespace wpdet
