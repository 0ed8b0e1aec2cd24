#pragma once

#include <functional>
#include <vector>

#include "cherednik/cyclotomic.hpp"
#include "cherednik/ratfunc.hpp"

namespace cherednik {

inline Rat scalar_one(const Rat&) { return Rat(1); }
inline Cyclo scalar_one(const Cyclo&) { return Cyclo(Rat(1)); }
inline ParamScalar scalar_one(const ParamScalar& s) {
  return ParamScalar::constant(s.symbols(), Rat(1));
}

// Dense matrix over an exact field T. A zero element is carried explicitly
// because some field types (ParamScalar) are not default-constructible into a
// valid state.
template <class T>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(size_t r, size_t c, const T& zero) : r_(r), c_(c), zero_(zero), a_(r * c, zero) {}

  static Matrix identity(size_t n, const T& zero) {
    Matrix m(n, n, zero);
    T one = scalar_one(zero);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  const T& zero() const { return zero_; }

  T& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

  bool operator==(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (size_t k = 0; k < a_.size(); ++k)
      if (!(a_[k] == o.a_[k])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator*(const Matrix& o) const {
    Matrix m(r_, o.c_, zero_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < c_; ++k) {
        const T& x = at(i, k);
        if (x == zero_) continue;
        for (size_t j = 0; j < o.c_; ++j) m.at(i, j) += x * o.at(k, j);
      }
    return m;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out(r_, zero_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) out[i] += at(i, j) * v[j];
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix m = *this;
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix m = *this;
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
    return m;
  }

  Matrix scaled(const T& s) const {
    Matrix m = *this;
    for (T& x : m.a_) x *= s;
    return m;
  }

  Matrix transpose() const {
    Matrix m(c_, r_, zero_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Matrix map(const std::function<T(const T&)>& f) const {
    Matrix m = *this;
    for (T& x : m.a_) x = f(x);
    return m;
  }

  // In-place reduced row echelon form with deterministic pivoting (first
  // nonzero entry scanning down each column). Returns pivot column list.
  std::vector<size_t> rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    T one = scalar_one(zero_);
    for (size_t col = 0; col < c_ && row < r_; ++col) {
      size_t sel = row;
      while (sel < r_ && at(sel, col) == zero_) ++sel;
      if (sel == r_) continue;
      if (sel != row)
        for (size_t j = 0; j < c_; ++j) std::swap(at(sel, j), at(row, j));
      T inv = one / at(row, col);
      for (size_t j = col; j < c_; ++j) at(row, j) *= inv;
      for (size_t i = 0; i < r_; ++i) {
        if (i == row) continue;
        T f = at(i, col);
        if (f == zero_) continue;
        for (size_t j = col; j < c_; ++j) at(i, j) -= f * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  // Basis of the right kernel; deterministic (one vector per free column, in
  // column order).
  std::vector<std::vector<T>> kernel_basis() const {
    Matrix m = *this;
    std::vector<size_t> pivots = m.rref();
    std::vector<bool> is_pivot(c_, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    T one = scalar_one(zero_);
    for (size_t col = 0; col < c_; ++col) {
      if (is_pivot[col]) continue;
      std::vector<T> v(c_, zero_);
      v[col] = one;
      for (size_t pi = 0; pi < pivots.size(); ++pi) v[pivots[pi]] = zero_ - m.at(pi, col);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  T det() const {
    if (r_ != c_) fail(ErrorCode::IncompatibleElements, "determinant of non-square matrix");
    Matrix m = *this;
    T result = scalar_one(zero_);
    bool neg = false;
    size_t row = 0;
    for (size_t col = 0; col < c_; ++col) {
      size_t sel = row;
      while (sel < r_ && m.at(sel, col) == zero_) ++sel;
      if (sel == r_) return zero_;
      if (sel != row) {
        for (size_t j = 0; j < c_; ++j) std::swap(m.at(sel, j), m.at(row, j));
        neg = !neg;
      }
      result *= m.at(row, col);
      T inv = scalar_one(zero_) / m.at(row, col);
      for (size_t i = row + 1; i < r_; ++i) {
        T f = m.at(i, col) * inv;
        if (f == zero_) continue;
        for (size_t j = col; j < c_; ++j) m.at(i, j) -= f * m.at(row, j);
      }
      ++row;
    }
    return neg ? zero_ - result : result;
  }

  Matrix inverse() const {
    if (r_ != c_) fail(ErrorCode::NotInvertible, "inverse of non-square matrix");
    Matrix aug(r_, 2 * c_, zero_);
    T one = scalar_one(zero_);
    for (size_t i = 0; i < r_; ++i) {
      for (size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, c_ + i) = one;
    }
    std::vector<size_t> pivots = aug.rref();
    if (pivots.size() != r_ || pivots.back() >= c_)
      fail(ErrorCode::NotInvertible, "singular matrix");
    Matrix inv(r_, c_, zero_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
    return inv;
  }

 private:
  size_t r_, c_;
  T zero_;
  std::vector<T> a_;
};

using CMat = Matrix<Cyclo>;
using PMat = Matrix<ParamScalar>;

// Exact solution of A x = b over the scalar field: consistency flag, one
// particular solution, and a kernel basis.
template <class T>
struct LinSolveResult {
  bool consistent = false;
  std::vector<T> particular;
  std::vector<std::vector<T>> kernel;
};

template <class T>
LinSolveResult<T> solve_linear(const Matrix<T>& A, const std::vector<T>& b) {
  if (A.rows() != b.size()) fail(ErrorCode::IncompatibleElements, "solve_linear size mismatch");
  size_t n = A.cols();
  Matrix<T> aug(A.rows(), n + 1, A.zero());
  for (size_t i = 0; i < A.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n) = b[i];
  }
  std::vector<size_t> pivots = aug.rref();
  LinSolveResult<T> res;
  res.consistent = pivots.empty() || pivots.back() < n;
  if (res.consistent) {
    res.particular.assign(n, A.zero());
    for (size_t pi = 0; pi < pivots.size(); ++pi) res.particular[pivots[pi]] = aug.at(pi, n);
  }
  std::vector<bool> is_pivot(n, false);
  for (size_t p : pivots)
    if (p < n) is_pivot[p] = true;
  T one = scalar_one(A.zero());
  for (size_t col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    std::vector<T> v(n, A.zero());
    v[col] = one;
    for (size_t pi = 0; pi < pivots.size() && pivots[pi] < n; ++pi)
      v[pivots[pi]] = A.zero() - aug.at(pi, col);
    res.kernel.push_back(std::move(v));
  }
  return res;
}

}  // namespace cherednik
