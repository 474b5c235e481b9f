#pragma once

#include <cstddef>
#include <vector>

#include "sszego/rational.hpp"

namespace sszego {

using RationalVector = std::vector<Rational>;

// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  RationalVector operator*(const RationalVector& v) const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

  // M[i][j] == M[rows-1-i][cols-1-j] for all entries.
  bool is_centre_symmetric() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

// Exact inverse by fraction-free Gauss-Jordan elimination over the integers.
// Non-square input raises PreconditionError, singular input SingularMatrixError.
RationalMatrix inverse(const RationalMatrix& m);

// Kernel basis of a square matrix. One vector per free column of the reduced
// row echelon form: 1 at the free column, zero at the other free columns.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

}  // namespace sszego
