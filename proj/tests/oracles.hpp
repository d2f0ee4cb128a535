#pragma once

// Independent reference computations for the tests. Nothing here calls the
// routines it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "toda/matrix.hpp"
#include "toda/phase_point.hpp"

namespace oracle {

using toda::Matrix;
using toda::PhasePoint;
using toda::Rational;

inline Rational R(const char* text) { return toda::parse_rational(text); }

inline PhasePoint<Rational> point(std::vector<const char*> z, std::vector<const char*> q) {
  std::vector<Rational> zz, qq;
  for (auto* s : z) zz.push_back(R(s));
  for (auto* s : q) qq.push_back(R(s));
  return PhasePoint<Rational>(zz, qq);
}

// Worked example used throughout.
inline PhasePoint<Rational> example_point() { return point({"2", "3"}, {"1/2", "1/5"}); }

// Sum over permutations.
template <class T>
T leibniz_det(const Matrix<T>& m) {
  const std::size_t d = m.dim();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  T total = toda::ScalarTraits<T>::zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term = toda::ScalarTraits<T>::one();
    for (std::size_t i = 0; i < d; ++i) term = term * m(i, perm[i]);
    if (inversions % 2 == 0)
      total += term;
    else
      total -= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// det(lambda E - m) at a given lambda.
template <class T>
T char_poly_at(const Matrix<T>& m, const T& lambda) {
  return leibniz_det(lambda * Matrix<T>::identity(m.dim()) - m);
}

// Path weight table with positions 1..2n, position p > n standing for the
// barred index 2n+1-p.
inline Rational weight(const PhasePoint<Rational>& x, std::size_t n, std::size_t a, std::size_t b) {
  auto z = [&](std::size_t k) { return x.z()[k - 1]; };
  auto q = [&](std::size_t k) { return x.Q()[k - 1]; };
  auto tail = [&](std::size_t k) {
    Rational p = 1;
    for (std::size_t j = k; j <= n; ++j) p *= q(j);
    return p;
  };
  const bool a_bar = a > n, b_bar = b > n;
  const std::size_t ka = a_bar ? 2 * n + 1 - a : a;
  const std::size_t kb = b_bar ? 2 * n + 1 - b : b;
  if (!a_bar && !b_bar) {
    if (ka == kb) return z(ka);
    if (kb == ka + 1) return -q(ka) * z(ka);
    return 0;
  }
  if (a_bar && b_bar) {
    if (ka == kb) return 1 / z(ka);
    if (kb + 1 == ka) return -q(ka - 1) / z(ka);
    return 0;
  }
  if (!a_bar && b_bar) {
    if (kb == ka) return -z(ka) * tail(ka);
    if (kb == ka + 1) return z(ka) * tail(ka);
  }
  return 0;
}

// F_i as the plain sum over all chains x1 <= y1 < x2 <= y2 < ... of length i.
inline Rational brute_force_f(const PhasePoint<Rational>& x, std::size_t i) {
  const std::size_t n = x.n(), d = 2 * n;
  std::function<Rational(std::size_t, std::size_t)> go = [&](std::size_t start, std::size_t left) -> Rational {
    if (left == 0) return 1;
    Rational total = 0;
    for (std::size_t a = start; a <= d; ++a)
      for (std::size_t b = a; b <= d; ++b) {
        const Rational w = weight(x, n, a, b);
        if (w != 0) total += w * go(b + 1, left - 1);
      }
    return total;
  };
  return go(1, i);
}

// Elementary symmetric polynomial by subset enumeration.
template <class T>
T subset_elementary(std::size_t i, const std::vector<T>& v) {
  T total = toda::ScalarTraits<T>::zero();
  const std::size_t m = v.size();
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountl(mask)) != i) continue;
    T p = toda::ScalarTraits<T>::one();
    for (std::size_t k = 0; k < m; ++k)
      if (mask & (1ul << k)) p = p * v[k];
    total = total + p;
  }
  return total;
}

// Central difference of f along coordinate index a of a real vector.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> u, std::size_t a, double step = 1e-6) {
  const double h = step * std::max(1.0, std::fabs(u[a]));
  u[a] += h;
  const double up = f(u);
  u[a] -= 2 * h;
  const double down = f(u);
  return (up - down) / (2 * h);
}

}  // namespace oracle
