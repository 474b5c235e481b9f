#include "sszego/matrix.hpp"

#include <utility>

#include "sszego/errors.hpp"

namespace sszego {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw PreconditionError("matrix entry count does not match shape");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw PreconditionError("matrix-vector shape mismatch");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix difference shape mismatch");
  RationalMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
  return out;
}

bool RationalMatrix::is_centre_symmetric() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(rows_ - 1 - i, cols_ - 1 - j)) return false;
    }
  }
  return true;
}

namespace {

using IntegerRows = std::vector<std::vector<Integer>>;

// Scale every row by the lcm of its denominators so the entries are integers.
// Row scaling changes neither the kernel nor invertibility.
IntegerRows integer_rows(const RationalMatrix& m, std::vector<Integer>* scales = nullptr) {
  IntegerRows out(m.rows(), std::vector<Integer>(m.cols()));
  if (scales) scales->assign(m.rows(), Integer(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    if (scales) (*scales)[i] = l;
  }
  return out;
}

struct Echelon {
  IntegerRows rows;
  std::vector<std::size_t> pivot_cols;
  Integer last_pivot = 1;
};

// Fraction-free Gauss-Jordan (Bareiss). Every row other than the pivot row is
// updated at each step, so on a pivot column all pivot rows end up holding the
// same value (the last pivot) and the remaining entries are exact integers.
// `limit` bounds the columns searched for pivots.
Echelon bareiss_gauss_jordan(IntegerRows a, std::size_t limit) {
  const std::size_t nrows = a.size();
  const std::size_t ncols = nrows ? a[0].size() : 0;
  Echelon out;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && a[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      // Keep the determinant sign meaningful for the pivot chain.
      for (auto& x : a[r]) x = -x;
    }
    const Integer pivot = a[r][c];
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      const Integer factor = a[i][c];
      for (std::size_t j = 0; j < ncols; ++j) {
        if (j == c) continue;
        Integer v = pivot * a[i][j] - factor * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = pivot;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rows = std::move(a);
  out.last_pivot = prev;
  return out;
}

}  // namespace

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Integer> scales;
  IntegerRows aug = integer_rows(m, &scales);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    aug[i][n + i] = 1;
  }
  Echelon e = bareiss_gauss_jordan(std::move(aug), n);
  if (e.pivot_cols.size() != n) throw SingularMatrixError("matrix is singular");
  // Left block is diag(d, ..., d); right block is d * (D M)^{-1} with D the row scales.
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& d = e.rows[i][i];
    for (std::size_t j = 0; j < n; ++j) out(i, j) = fraction(e.rows[i][n + j] * scales[j], d);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j).canonicalize();
  }
  if (out * m != RationalMatrix::identity(n)) throw InvariantViolation("inverse failed the multiplication check");
  return out;
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  if (!m.is_square()) throw PreconditionError("nullspace expects a square matrix");
  const std::size_t n = m.cols();
  Echelon e = bareiss_gauss_jordan(integer_rows(m), n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
      const std::size_t pc = e.pivot_cols[r];
      Rational x(-e.rows[r][f], e.rows[r][pc]);
      x.canonicalize();
      v[pc] = x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace sszego
