#pragma once

#include <cstddef>
#include <vector>

#include "toda/matrix.hpp"

namespace toda {

// Coefficients c_0..c_d of sum_i c_i lambda^{d-i}; c_0 = 1 for a
// characteristic polynomial.
template <Scalar T>
struct PolyInLambda {
  std::vector<T> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }

  T evaluate(const T& lambda) const {
    T acc = ScalarTraits<T>::zero();
    for (const auto& c : coeffs) acc = acc * lambda + c;
    return acc;
  }

  friend bool operator==(const PolyInLambda&, const PolyInLambda&) = default;
};

// det(lambda E - m) by Faddeev-LeVerrier. The only divisions are by the
// integers 1..d, so the rational result is exact.
template <Scalar T>
PolyInLambda<T> char_poly(const Matrix<T>& m) {
  using Tr = ScalarTraits<T>;
  const std::size_t d = m.dim();
  PolyInLambda<T> p;
  p.coeffs.reserve(d + 1);
  p.coeffs.push_back(Tr::one());
  Matrix<T> aux = Matrix<T>::zero(d);
  for (std::size_t k = 1; k <= d; ++k) {
    aux = m * aux;
    for (std::size_t i = 0; i < d; ++i) aux(i, i) = aux(i, i) + p.coeffs[k - 1];
    const T tr = (m * aux).trace();
    const T inv_k = Tr::from_rational(Rational(1, static_cast<unsigned long>(k)));
    p.coeffs.push_back(Tr::zero() - tr * inv_k);
  }
  return p;
}

template <Scalar T>
struct LuFactors {
  Matrix<T> lower;  // unit lower triangular
  Matrix<T> upper;  // upper triangular
};

// Doolittle factorization m = lower * upper without pivoting. The factors
// are unique when every leading principal minor is nonzero; otherwise
// DegeneratePoint.
template <Scalar T>
LuFactors<T> lu_unit_lower(const Matrix<T>& m) {
  using Tr = ScalarTraits<T>;
  const std::size_t d = m.dim();
  const double scale = m.max_magnitude();
  Matrix<T> lower = Matrix<T>::identity(d);
  Matrix<T> upper(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = k; j < d; ++j) {
      T s = m(k, j);
      for (std::size_t p = 0; p < k; ++p) s = s - lower(k, p) * upper(p, j);
      upper(k, j) = s;
    }
    if (Tr::pivot_vanishes(upper(k, k), scale))
      throw DegeneratePoint("lu_unit_lower: leading principal minor " + std::to_string(k + 1) +
                            " vanishes");
    const T inv = Tr::reciprocal(upper(k, k));
    for (std::size_t i = k + 1; i < d; ++i) {
      T s = m(i, k);
      for (std::size_t p = 0; p < k; ++p) s = s - lower(i, p) * upper(p, k);
      lower(i, k) = s * inv;
    }
  }
  return {std::move(lower), std::move(upper)};
}

// exp(t m) by scaling and squaring of a truncated Taylor series.
Matrix<double> mat_exp(const Matrix<double>& m, double t);

}  // namespace toda
