/// @file matrix.hpp
/// @brief Minimal dense matrix over an exact scalar ring, and exact linear
///        solving over Q(q).
#ifndef QAB_MATRIX_HH
#define QAB_MATRIX_HH

#include "qab/ratfn.hpp"

#include <vector>

namespace qab {

/// Nondegeneracy failure of a diagonal class block: an upstream bug, not a
/// user error.
class SingularBlock : public InternalError {
 public:
  explicit SingularBlock(const std::string& what) : InternalError(what) {}
};

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(size_t n, const T& one) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  T& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("Matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a.at(i, k);
        for (size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
      }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

inline Matrix<RatFn> block(const Matrix<RatFn>& m, std::pair<size_t, size_t> rows,
                           std::pair<size_t, size_t> cols) {
  Matrix<RatFn> b(rows.second - rows.first, cols.second - cols.first);
  for (size_t i = rows.first; i < rows.second; ++i)
    for (size_t j = cols.first; j < cols.second; ++j)
      b.at(i - rows.first, j - cols.first) = m.at(i, j);
  return b;
}

inline void set_block(Matrix<RatFn>& m, std::pair<size_t, size_t> rows,
                      std::pair<size_t, size_t> cols, const Matrix<RatFn>& b) {
  for (size_t i = rows.first; i < rows.second; ++i)
    for (size_t j = cols.first; j < cols.second; ++j)
      m.at(i, j) = b.at(i - rows.first, j - cols.first);
}

/// Solve A X = B exactly by Gauss-Jordan over Q(q); throws SingularBlock.
inline Matrix<RatFn> solve(Matrix<RatFn> a, Matrix<RatFn> b) {
  size_t n = a.rows();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a.at(piv, col).is_zero()) ++piv;
    if (piv == n) throw SingularBlock("singular diagonal class block");
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      for (size_t j = 0; j < b.cols(); ++j) std::swap(b.at(piv, j), b.at(col, j));
    }
    RatFn d = a.at(col, col);
    for (size_t j = 0; j < n; ++j) a.at(col, j) /= d;
    for (size_t j = 0; j < b.cols(); ++j) b.at(col, j) /= d;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      RatFn f = a.at(r, col);
      for (size_t j = 0; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
      for (size_t j = 0; j < b.cols(); ++j) b.at(r, j) -= f * b.at(col, j);
    }
  }
  return b;
}

inline Matrix<RatFn> to_rat(const Matrix<LaurentPoly>& m) {
  Matrix<RatFn> r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = RatFn(m.at(i, j));
  return r;
}

}  // namespace detail

}  // namespace qab

#endif  // QAB_MATRIX_HH
