#ifndef POLARSOLVE_MATRIX_HPP
#define POLARSOLVE_MATRIX_HPP

#include <polarsolve/multipoly.hpp>
#include <polarsolve/rational.hpp>

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polarsolve {

/// Dense rational matrix, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("matrix entry count does not match shape");
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Rational>& entries() const { return a_; }

  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

  friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RatMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  std::vector<Rational> apply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<Rational> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Submatrix on the given rows and columns, in the given order.
  RatMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    RatMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Gaussian elimination over Q.
inline Rational determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan; throws std::domain_error when singular.
inline RatMatrix inverse(const RatMatrix& in) {
  if (in.rows() != in.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = in.rows();
  RatMatrix m = in, inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) throw std::domain_error("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(piv, j), m(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    Rational s = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Square-or-rectangular matrix of polynomials sharing one variable count.
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

namespace detail {

inline MultiPoly cofactor_det(const PolyMatrix& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, Rational(1));
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  MultiPoly det(nvars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix sub(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) sub[r - 1].push_back(m[r][c]);
    MultiPoly term = m[0][j] * cofactor_det(sub, nvars);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

/// Fraction-free Bareiss elimination; every division is exact.
inline MultiPoly bareiss_det(PolyMatrix m, std::size_t nvars) {
  const std::size_t n = m.size();
  MultiPoly prev = MultiPoly::constant(nvars, Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return MultiPoly(nvars);
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace detail

/// Exact determinant of a square polynomial matrix: cofactor expansion up to
/// 4x4, Bareiss above. Never divides by a polynomial that may vanish.
inline MultiPoly poly_det(const PolyMatrix& m, std::size_t nvars) {
  for (const auto& row : m) {
    if (row.size() != m.size()) throw std::invalid_argument("determinant of a non-square polynomial matrix");
    for (const auto& e : row)
      if (e.nvars() != nvars) throw std::invalid_argument("matrix entry has wrong variable count");
  }
  if (m.size() <= 4) return detail::cofactor_det(m, nvars);
  return detail::bareiss_det(m, nvars);
}

inline PolyMatrix select(const PolyMatrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  PolyMatrix s(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c : cols) s[i].push_back(m[rows[i]][c]);
  return s;
}

}  // namespace polarsolve

#endif  // POLARSOLVE_MATRIX_HPP
