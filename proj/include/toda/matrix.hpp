#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "toda/errors.hpp"
#include "toda/scalar.hpp"

namespace toda {

// Dense square matrix, row-major, 0-based indices. The scalar type fixes the
// arithmetic mode for the whole matrix.
template <Scalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, ScalarTraits<T>::zero()) {
    if (dim == 0) throw IndexMismatch("matrix dimension must be at least 1");
  }

  static Matrix zero(std::size_t dim) { return Matrix(dim); }

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = ScalarTraits<T>::one();
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw IndexMismatch("matrix rows must form a square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t dim() const { return dim_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  // Square sub-block of side `size` with top-left corner (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t size) const {
    Matrix b(size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix transpose() const {
    Matrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s = ScalarTraits<T>::zero();
    for (std::size_t i = 0; i < dim_; ++i) s = s + (*this)(i, i);
    return s;
  }

  // Largest entry magnitude; the scale for relative pivot thresholds.
  double max_magnitude() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, ScalarTraits<T>::magnitude(x));
    return m;
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Matrix<U> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.dim_ == b.dim_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same(a, b);
    Matrix c(a.dim_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same(a, b);
    Matrix c(a.dim_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same(a, b);
    const std::size_t d = a.dim_;
    Matrix c(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        const T& aik = a(i, k);
        if (ScalarTraits<T>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < d; ++j) c(i, j) = c(i, j) + aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c(a.dim_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = s * a.data_[k];
    return c;
  }

 private:
  static void require_same(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_)
      throw IndexMismatch("dimension mismatch: " + std::to_string(a.dim_) + " vs " +
                          std::to_string(b.dim_));
  }

  std::size_t dim_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

// The n x n reversal matrix J = sum_i E_{i, n+1-i}.
template <Scalar T>
Matrix<T> reversal(std::size_t n) {
  Matrix<T> j(n);
  for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = ScalarTraits<T>::one();
  return j;
}

// J X J, computed by index reversal instead of two products.
template <Scalar T>
Matrix<T> reverse_conjugate(const Matrix<T>& x) {
  const std::size_t n = x.dim();
  Matrix<T> r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = x(n - 1 - i, n - 1 - j);
  return r;
}

template <Scalar T>
Matrix<T> diagonal(const std::vector<T>& entries) {
  Matrix<T> d(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
  return d;
}

// Gauss-Jordan inverse with partial pivoting (largest magnitude, first
// nonzero in exact mode). Float pivots below 1e-12 * max|entry| are singular.
template <Scalar T>
Matrix<T> inverse(const Matrix<T>& m) {
  using Tr = ScalarTraits<T>;
  const std::size_t d = m.dim();
  const double scale = m.max_magnitude();
  Matrix<T> a = m;
  Matrix<T> inv = Matrix<T>::identity(d);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    if constexpr (Tr::exact) {
      while (piv < d && Tr::is_zero(a(piv, col))) ++piv;
      if (piv == d) throw SingularMatrix("inverse: matrix is singular");
    } else {
      for (std::size_t r = col + 1; r < d; ++r)
        if (Tr::magnitude(a(r, col)) > Tr::magnitude(a(piv, col))) piv = r;
      if (Tr::pivot_vanishes(a(piv, col), scale))
        throw SingularMatrix("inverse: pivot below threshold");
    }
    if (piv != col)
      for (std::size_t j = 0; j < d; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const T p = Tr::reciprocal(a(col, col));
    for (std::size_t j = 0; j < d; ++j) {
      a(col, j) = a(col, j) * p;
      inv(col, j) = inv(col, j) * p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || Tr::is_zero(a(r, col))) continue;
      const T f = a(r, col);
      for (std::size_t j = 0; j < d; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

// Inverse of a lower-triangular matrix by forward substitution. Only the
// diagonal is ever inverted, so this also works for matrices of Laurent
// polynomials whose diagonal entries are monomials.
template <Scalar T>
Matrix<T> lower_triangular_inverse(const Matrix<T>& m) {
  using Tr = ScalarTraits<T>;
  const std::size_t d = m.dim();
  const double scale = m.max_magnitude();
  std::vector<T> diag_inv;
  diag_inv.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (Tr::pivot_vanishes(m(i, i), scale))
      throw SingularMatrix("lower_triangular_inverse: zero diagonal entry");
    diag_inv.push_back(Tr::reciprocal(m(i, i)));
  }
  Matrix<T> inv(d);
  for (std::size_t j = 0; j < d; ++j) {
    inv(j, j) = diag_inv[j];
    for (std::size_t i = j + 1; i < d; ++i) {
      T s = Tr::zero();
      for (std::size_t k = j; k < i; ++k)
        if (!Tr::is_zero(m(i, k))) s = s + m(i, k) * inv(k, j);
      inv(i, j) = Tr::zero() - s * diag_inv[i];
    }
  }
  return inv;
}

// Determinant by Gaussian elimination with row exchanges.
template <Scalar T>
T determinant(const Matrix<T>& m) {
  using Tr = ScalarTraits<T>;
  const std::size_t d = m.dim();
  Matrix<T> a = m;
  T det = Tr::one();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    if constexpr (Tr::exact) {
      while (piv < d && Tr::is_zero(a(piv, col))) ++piv;
    } else {
      for (std::size_t r = col + 1; r < d; ++r)
        if (Tr::magnitude(a(r, col)) > Tr::magnitude(a(piv, col))) piv = r;
      if (Tr::is_zero(a(piv, col))) piv = d;
    }
    if (piv == d) return Tr::zero();
    if (piv != col) {
      for (std::size_t j = 0; j < d; ++j) std::swap(a(piv, j), a(col, j));
      det = Tr::zero() - det;
    }
    det = det * a(col, col);
    const T p = Tr::reciprocal(a(col, col));
    for (std::size_t r = col + 1; r < d; ++r) {
      if (Tr::is_zero(a(r, col))) continue;
      const T f = a(r, col) * p;
      for (std::size_t j = col; j < d; ++j) a(r, j) = a(r, j) - f * a(col, j);
    }
  }
  return det;
}

template <Scalar T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (!ScalarTraits<T>::is_zero(m(i, j))) return false;
  return true;
}

// Entrywise closeness; exact equality for exact scalars.
template <Scalar T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, double abs_tol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if constexpr (ScalarTraits<T>::exact) {
        if (!(a(i, j) == b(i, j))) return false;
      } else {
        if (!(std::fabs(a(i, j) - b(i, j)) <= abs_tol)) return false;
      }
    }
  return true;
}

inline double max_abs_difference(const Matrix<double>& a, const Matrix<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace toda
