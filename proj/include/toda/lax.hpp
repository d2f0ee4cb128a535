#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "toda/linalg.hpp"
#include "toda/matrix.hpp"
#include "toda/phase_point.hpp"

namespace toda {

template <class T>
struct LaxFactors {
  Matrix<T> N;
  Matrix<T> B;
  Matrix<T> C;
};

// N = diag(N11, N22), B = [[1, J], [0, 1]], C = [[J N22 J, 0], [P, J N11 J]]
// with N11 upper bidiagonal (diagonal z_i, superdiagonal 1), N22 unit upper
// bidiagonal with superdiagonal Q_{n-1}z_{n-1}, ..., Q_1z_1, and P = Q_n z_n E_{1,n}.
template <class T>
LaxFactors<T> build_factors(const PhasePoint<T>& x) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = x.n();
  const auto& z = x.z();
  const auto& q = x.Q();

  Matrix<T> n11(n), n22 = Matrix<T>::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    n11(i, i) = z[i];
    if (i + 1 < n) {
      n11(i, i + 1) = Tr::one();
      n22(i, i + 1) = q[n - 2 - i] * z[n - 2 - i];
    }
  }

  Matrix<T> big_n(2 * n);
  big_n.set_block(0, 0, n11);
  big_n.set_block(n, n, n22);

  Matrix<T> b = Matrix<T>::identity(2 * n);
  b.set_block(0, n, reversal<T>(n));

  Matrix<T> c(2 * n);
  c.set_block(0, 0, reverse_conjugate(n22));
  c.set_block(n, n, reverse_conjugate(n11));
  c(n, n - 1) = q[n - 1] * z[n - 1];

  return {std::move(big_n), std::move(b), std::move(c)};
}

// L = N B C^{-1}. C is lower triangular with diagonal (1,..,1,z_n,..,z_1),
// so the inverse only divides by the z_i and stays Laurent-polynomial.
template <class T>
Matrix<T> build_lax(const PhasePoint<T>& x) {
  const auto f = build_factors(x);
  return f.N * f.B * lower_triangular_inverse(f.C);
}

enum class LaxSide { lax, inverse };

struct GammaViolation {
  LaxSide matrix;  // which of L, L^{-1} holds the offending entry
  std::size_t row;
  std::size_t col;
};

struct GammaReport {
  bool in_gamma1 = false;
  bool in_gamma2 = false;
  std::optional<GammaViolation> gamma1_violation;
  std::optional<GammaViolation> gamma2_violation;

  bool in_gamma() const { return in_gamma1 && in_gamma2; }
};

namespace detail {

// Sparsity pattern of L^{-1} that cuts out Gamma_1: 0 = forced zero,
// 1 = forced one, -1 = free.
inline int gamma1_pattern(std::size_t n, std::size_t i, std::size_t j) {
  if (i < n) return (j < n && i > j + 1) ? 0 : -1;
  if (j < n) return (i == n && j == n - 1) ? -1 : 0;
  if (i == n) return -1;
  const std::size_t r = i - n, c = j - n;
  if (c + 1 == r) return 1;
  return c + 1 < r ? 0 : -1;
}

}  // namespace detail

template <class T>
GammaReport gamma_membership(const Matrix<T>& lax) {
  using Tr = ScalarTraits<T>;
  if (lax.dim() % 2 != 0) throw IndexMismatch("gamma_membership: odd dimension");
  const std::size_t n = lax.dim() / 2;
  const Matrix<T> inv = inverse(lax);
  const double scale = std::max(lax.max_magnitude(), inv.max_magnitude());
  const T zero = Tr::zero(), one = Tr::one(), minus_one = Tr::zero() - Tr::one();

  GammaReport rep;
  for (std::size_t i = 0; i < 2 * n && !rep.gamma1_violation; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      const int pat = detail::gamma1_pattern(n, i, j);
      if (pat < 0) continue;
      if (!Tr::near(inv(i, j), pat == 0 ? zero : one, scale)) {
        rep.gamma1_violation = GammaViolation{LaxSide::inverse, i, j};
        break;
      }
    }
  rep.in_gamma1 = !rep.gamma1_violation;

  auto check = [&](LaxSide side, std::size_t i, std::size_t j, const T& expected) {
    if (rep.gamma2_violation) return;
    const T& actual = side == LaxSide::lax ? lax(i, j) : inv(i, j);
    if (!Tr::near(actual, expected, scale)) rep.gamma2_violation = GammaViolation{side, i, j};
  };
  // Upper-right blocks: J in L, -J in L^{-1}.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) check(LaxSide::lax, i, n + j, i + j == n - 1 ? one : zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      check(LaxSide::inverse, i, n + j, i + j == n - 1 ? minus_one : zero);
  // L = [[U, J], [*, W]]  =>  L^{-1} = [[J W J, -J], [*, J U J]].
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      check(LaxSide::inverse, i, j, lax(2 * n - 1 - i, 2 * n - 1 - j));
      check(LaxSide::inverse, n + i, n + j, lax(n - 1 - i, n - 1 - j));
    }
  rep.in_gamma2 = !rep.gamma2_violation;
  return rep;
}

// Recovers (z, Q) from L via the unit-lower LU factorization of L^{-1}:
// z_i = 1/upper_ii, Q_k = lower_{k+1,k} upper_kk. The remaining diagonal and
// subdiagonal reads and the rebuilt L must agree, otherwise NotInGamma.
template <class T>
PhasePoint<T> parameters_from_lax(const Matrix<T>& lax) {
  using Tr = ScalarTraits<T>;
  if (lax.dim() % 2 != 0) throw IndexMismatch("parameters_from_lax: odd dimension");
  const std::size_t n = lax.dim() / 2;
  const Matrix<T> inv = inverse(lax);
  const auto lu = lu_unit_lower(inv);

  std::vector<T> z(n), q(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = Tr::reciprocal(lu.upper(i, i));
  for (std::size_t k = 0; k < n; ++k) q[k] = lu.lower(k + 1, k) * lu.upper(k, k);

  const double scale = std::max(inv.max_magnitude(), lax.max_magnitude());
  for (std::size_t i = 0; i < n; ++i)
    if (!Tr::near(lu.upper(n + i, n + i), z[n - 1 - i], scale))
      throw NotInGamma("parameters_from_lax: diagonal read " + std::to_string(n + i + 1) +
                       " disagrees");
  for (std::size_t k = 1; k < n; ++k)
    if (!Tr::near(lu.lower(n + k, n + k - 1), Tr::reciprocal(z[n - k]), scale))
      throw NotInGamma("parameters_from_lax: subdiagonal read " + std::to_string(n + k + 1) +
                       " disagrees");

  PhasePoint<T> x(std::move(z), std::move(q));
  const Matrix<T> rebuilt = build_lax(x);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j)
      if (!Tr::near(rebuilt(i, j), lax(i, j), scale))
        throw NotInGamma("parameters_from_lax: matrix is outside the Lax chart");
  return x;
}

}  // namespace toda
