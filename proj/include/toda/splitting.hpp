#pragma once

#include <cstddef>

#include "toda/linalg.hpp"
#include "toda/matrix.hpp"

namespace toda {

// gl_2n = g_+ (+) g_-, where with 2x2 blocks of size n
//   g_+ = [[X, Y], [0, Z]], X upper triangular, Z strictly upper triangular,
//   g_- = [[U, 0], [V, W]], W = J U J.
// G_+ and G_- are the corresponding groups (X in B_+, Z in U_+; W = J U J).
enum class Subset { g_plus, g_minus, G_plus, G_minus };

template <Scalar T>
struct SplitPair {
  Matrix<T> plus;
  Matrix<T> minus;
};

// The projections pi_+/pi_-. Entrywise: pi_- takes the lower-left block
// whole; its upper-left block U copies the strict lower part of X's
// upper-left block and reads the rest from the lower-right block D',
// U_kl = D'_{n+1-k, n+1-l} for k <= l; its lower-right block is J U J.
template <Scalar T>
SplitPair<T> project(const Matrix<T>& x) {
  if (x.dim() % 2 != 0) throw IndexMismatch("project: dimension must be even");
  const std::size_t n = x.dim() / 2;
  Matrix<T> minus(2 * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const T u = k > l ? x(k, l) : x(2 * n - 1 - k, 2 * n - 1 - l);
      minus(k, l) = u;
      minus(2 * n - 1 - k, 2 * n - 1 - l) = u;
      minus(n + k, l) = x(n + k, l);
    }
  return {x - minus, std::move(minus)};
}

template <Scalar T>
bool membership(const Matrix<T>& x, Subset which) {
  using Tr = ScalarTraits<T>;
  if (x.dim() % 2 != 0) throw IndexMismatch("membership: dimension must be even");
  const std::size_t n = x.dim() / 2;
  const double scale = x.max_magnitude();
  const T zero = Tr::zero(), one = Tr::one();
  auto eq = [&](const T& a, const T& b) { return Tr::near(a, b, scale); };

  if (which == Subset::G_plus || which == Subset::G_minus) (void)inverse(x);  // SingularMatrix

  switch (which) {
    case Subset::g_plus:
    case Subset::G_plus: {
      const bool unipotent = which == Subset::G_plus;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (!eq(x(n + i, j), zero)) return false;
          if (i > j && !eq(x(i, j), zero)) return false;
          if (i > j && !eq(x(n + i, n + j), zero)) return false;
          if (i == j && !eq(x(n + i, n + j), unipotent ? one : zero)) return false;
        }
      return true;
    }
    case Subset::g_minus:
    case Subset::G_minus:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (!eq(x(i, n + j), zero)) return false;
          if (!eq(x(2 * n - 1 - i, 2 * n - 1 - j), x(i, j))) return false;
        }
      return true;
  }
  return false;
}

// Dimension of g_+ or g_- as the rank of the projection onto it, computed
// from the images of the matrix units.
std::size_t subalgebra_dimension(std::size_t n, Subset which);

template <Scalar T>
struct MinusPlusFactors {
  Matrix<T> K;  // in G_-
  Matrix<T> R;  // in G_+
};

// X = K R with K in G_-, R in G_+. First X = U1 R1 (U1 lower, R1 unit upper);
// then, with U1 = [[A, 0], [B, C]], C^{-1} J A J = R2 U2 (R2 unit upper,
// U2 lower) and K = [[A J U2^{-1} J, 0], [B J U2^{-1} J, C R2]],
// R = diag(J U2 J, R2^{-1}) R1. DegeneratePoint when a pivot vanishes.
template <Scalar T>
MinusPlusFactors<T> factor_minus_plus(const Matrix<T>& x) {
  using Tr = ScalarTraits<T>;
  if (x.dim() % 2 != 0) throw IndexMismatch("factor_minus_plus: dimension must be even");
  const std::size_t n = x.dim() / 2;
  const std::size_t d = 2 * n;

  const auto lu = lu_unit_lower(x);
  std::vector<T> piv(d), piv_inv(d);
  for (std::size_t i = 0; i < d; ++i) {
    piv[i] = lu.upper(i, i);
    piv_inv[i] = Tr::reciprocal(piv[i]);
  }
  const Matrix<T> u1 = lu.lower * diagonal(piv);
  const Matrix<T> r1 = diagonal(piv_inv) * lu.upper;

  const Matrix<T> a = u1.block(0, 0, n);
  const Matrix<T> b = u1.block(n, 0, n);
  const Matrix<T> c = u1.block(n, n, n);

  // Y = R2 U2 is the reversed LU of J Y J.
  const Matrix<T> y = lower_triangular_inverse(c) * reverse_conjugate(a);
  const auto lu2 = lu_unit_lower(reverse_conjugate(y));
  const Matrix<T> r2 = reverse_conjugate(lu2.lower);
  const Matrix<T> u2 = reverse_conjugate(lu2.upper);

  const Matrix<T> ju2inv_j = reverse_conjugate(lower_triangular_inverse(u2));
  Matrix<T> k(d);
  k.set_block(0, 0, a * ju2inv_j);
  k.set_block(n, 0, b * ju2inv_j);
  k.set_block(n, n, c * r2);

  Matrix<T> mid(d);
  mid.set_block(0, 0, lu2.upper);
  mid.set_block(n, n, inverse(r2));
  return {std::move(k), mid * r1};
}

template <Scalar T>
struct PlusMinusFactors {
  Matrix<T> plus;   // in G_+
  Matrix<T> minus;  // in G_-
};

// X = plus * minus, obtained from X^{-1} = K R as plus = R^{-1}, minus = K^{-1}.
template <Scalar T>
PlusMinusFactors<T> factor_plus_minus(const Matrix<T>& x) {
  const auto kr = factor_minus_plus(inverse(x));
  return {inverse(kr.R), inverse(kr.K)};
}

}  // namespace toda
