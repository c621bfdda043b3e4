#pragma once

// Dense exact linear algebra over FieldElem or EpsSeries.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcc/scalars.hpp"

namespace qcc {

/// Pivot preference: smaller is better. Keeps elimination deterministic.
inline std::size_t pivotCost(const FieldElem& x) { return x.num().length() + x.den().length(); }
inline std::size_t pivotCost(const EpsSeries& x) {
  // Lowest valuation first, then simplest leading coefficient.
  return static_cast<std::size_t>(x.valuation() + 1024) * 4096 + pivotCost(x.terms().begin()->second);
}

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1L);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool isZero() const {
    for (const auto& x : data_)
      if (!qcc::isZero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] + b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] - b.data_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::logic_error("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& x = a(i, k);
        if (qcc::isZero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const S& y = b(k, j);
          if (!qcc::isZero(y)) r(i, j) = r(i, j) + x * y;
        }
      }
    return r;
  }
  Matrix scaled(const S& s) const {
    Matrix r = *this;
    for (auto& x : r.data_)
      if (!qcc::isZero(x)) x = x * s;
    return r;
  }
  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  std::vector<S> column(std::size_t j) const {
    std::vector<S> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<S> row(std::size_t i) const {
    return std::vector<S>(data_.begin() + static_cast<long>(i * cols_),
                          data_.begin() + static_cast<long>((i + 1) * cols_));
  }
  static Matrix fromColumns(std::size_t rows, const std::vector<std::vector<S>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }
  static Matrix fromRows(std::size_t cols, const std::vector<std::vector<S>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  template <class T, class F>
  Matrix<T> map(F&& f) const {
    Matrix<T> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  void appendRow(const std::vector<S>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::logic_error("row length mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> data_;
};

template <class S>
std::vector<S> mulVec(const Matrix<S>& m, const std::vector<S>& x) {
  std::vector<S> y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!isZero(m(i, j)) && !isZero(x[j])) y[i] = y[i] + m(i, j) * x[j];
  return y;
}

template <class S>
bool isZeroVector(const std::vector<S>& x) {
  for (const auto& c : x)
    if (!isZero(c)) return false;
  return true;
}

/// Reduced row echelon form.
template <class S>
struct Echelon {
  Matrix<S> reduced;               ///< nonzero rows only
  std::vector<std::size_t> pivots;  ///< pivot column of each row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination; columns are scanned left to right, so earlier
/// columns become pivots first. Within a column the cheapest entry pivots.
template <class S>
Echelon<S> rref(Matrix<S> m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    std::size_t bestCost = 0;
    for (std::size_t i = r; i < rows; ++i) {
      if (isZero(m(i, c))) continue;
      std::size_t cost = pivotCost(m(i, c));
      if (best == rows || cost < bestCost) {
        best = i;
        bestCost = cost;
      }
    }
    if (best == rows) continue;
    if (best != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
    S inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!isZero(m(r, j))) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || isZero(m(i, c))) continue;
      S f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!isZero(m(r, j))) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<S> reduced(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = m(i, j);
  return {std::move(reduced), std::move(pivots)};
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
  return rref(m).rank();
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column.
template <class S>
std::vector<std::vector<S>> nullspace(const Matrix<S>& m) {
  auto e = rref(m);
  std::vector<bool> isPivot(m.cols(), false);
  for (auto p : e.pivots) isPivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (isPivot[free]) continue;
    std::vector<S> x(m.cols());
    x[free] = S(1L);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Solution set of m x = b: a particular solution (if any) and the kernel.
template <class S>
struct SolveResult {
  bool consistent = false;
  std::vector<S> particular;
  std::vector<std::vector<S>> kernel;
};

template <class S>
SolveResult<S> solve(const Matrix<S>& m, const std::vector<S>& b) {
  Matrix<S> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(aug);
  SolveResult<S> res;
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return res;
  res.consistent = true;
  res.particular.assign(m.cols(), S());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) res.particular[e.pivots[i]] = e.reduced(i, m.cols());
  res.kernel = nullspace(m);
  return res;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) throw std::logic_error("inverse of a non-square matrix");
  Matrix<S> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = S(1L);
  }
  auto e = rref(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Matrix<S> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

template <class S>
S determinant(Matrix<S> m) {
  std::size_t n = m.rows();
  if (m.cols() != n) throw std::logic_error("determinant of a non-square matrix");
  S det(1L);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    std::size_t bestCost = 0;
    for (std::size_t i = c; i < n; ++i) {
      if (isZero(m(i, c))) continue;
      std::size_t cost = pivotCost(m(i, c));
      if (best == n || cost < bestCost) {
        best = i;
        bestCost = cost;
      }
    }
    if (best == n) return S();
    if (best != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(best, j));
      det = -det;
    }
    det = det * m(c, c);
    S inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (isZero(m(i, c))) continue;
      S f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!isZero(m(c, j))) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

}  // namespace qcc
