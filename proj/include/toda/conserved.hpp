#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include "toda/lax.hpp"
#include "toda/laurent.hpp"
#include "toda/linalg.hpp"
#include "toda/phase_point.hpp"

namespace toda {

// Indices of the ordered set I = {1 < ... < n < nbar < ... < 1bar} are
// identified with 1..2n through kbar = 2n + 1 - k.
inline std::size_t bar(std::size_t n, std::size_t k) { return 2 * n + 1 - k; }

// Shapes (x, y) with a nonzero path weight; anything else weighs 0.
enum class IntervalShape {
  none,
  z_single,      // (k, k)            z_k
  z_step,        // (k, k+1)          -Q_k z_k
  zinv_single,   // (kbar, kbar)      z_k^{-1}
  zinv_step,     // (kbar, (k-1)bar)  -Q_{k-1} z_k^{-1}
  cross,         // (k, kbar)         -z_k Q_k...Q_n
  cross_shifted  // (k, (k+1)bar)     +z_k Q_k...Q_n
};

IntervalShape interval_shape(std::size_t n, std::size_t x, std::size_t y);

struct Interval {
  std::size_t x;
  std::size_t y;
  friend bool operator==(const Interval&, const Interval&) = default;
};

using IntervalChain = std::vector<Interval>;

// original: every chain x1 <= y1 < x2 <= ... of nonzero-weight intervals.
// improved: (k, kbar) with k < n is dropped, and (k, (k+1)bar) must be
// followed immediately by an interval starting at kbar. The discarded chains
// cancel in pairs because w(k, (k+1)bar) = -w(k, kbar).
enum class ChainMode { original, improved };

// Weight of the path gamma(x, y) at a point (1-based indices).
template <class T>
T interval_weight(const PhasePoint<T>& pt, std::size_t x, std::size_t y) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = pt.n();
  auto tail = [&](std::size_t k) {
    T p = Tr::one();
    for (std::size_t j = k; j <= n; ++j) p = p * pt.q_at(j);
    return p;
  };
  switch (interval_shape(n, x, y)) {
    case IntervalShape::z_single:
      return pt.z_at(x);
    case IntervalShape::z_step:
      return Tr::zero() - pt.q_at(x) * pt.z_at(x);
    case IntervalShape::zinv_single:
      return Tr::reciprocal(pt.z_at(bar(n, x)));
    case IntervalShape::zinv_step: {
      const std::size_t k = bar(n, x);
      return Tr::zero() - pt.q_at(k - 1) * Tr::reciprocal(pt.z_at(k));
    }
    case IntervalShape::cross:
      return Tr::zero() - pt.z_at(x) * tail(x);
    case IntervalShape::cross_shifted:
      return pt.z_at(x) * tail(x);
    case IntervalShape::none:
      break;
  }
  return Tr::zero();
}

LaurentPoly interval_weight(std::size_t n, std::size_t x, std::size_t y);

bool chain_admissible(std::size_t n, const IntervalChain& chain, ChainMode mode);

// All admissible chains of length i in lexicographic order of (x1, y1, ...).
std::vector<IntervalChain> enumerate_chains(std::size_t n, std::size_t i, ChainMode mode);

// sum over admissible chains of length i of the product of weights, by a
// memoized recursion on (first free index, intervals left, forced start).
template <class T>
T path_sum(const PhasePoint<T>& pt, std::size_t i, ChainMode mode) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = pt.n();
  const std::size_t top = 2 * n;
  std::vector<std::vector<T>> w(top + 1, std::vector<T>(top + 1, Tr::zero()));
  for (std::size_t x = 1; x <= top; ++x)
    for (std::size_t y = x; y <= top; ++y) w[x][y] = interval_weight(pt, x, y);

  // forced == 0 means the next interval may start anywhere from `start`.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, T> memo;
  auto rec = [&](auto&& self, std::size_t start, std::size_t left, std::size_t forced) -> T {
    if (left == 0) return forced ? Tr::zero() : Tr::one();
    const auto key = std::make_tuple(start, left, forced);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    T acc = Tr::zero();
    const std::size_t x_lo = forced ? forced : start;
    const std::size_t x_hi = forced ? forced : top;
    for (std::size_t x = x_lo; x <= x_hi && x <= top; ++x)
      for (std::size_t y = x; y <= top; ++y) {
        const IntervalShape s = interval_shape(n, x, y);
        if (s == IntervalShape::none) continue;
        std::size_t next_forced = 0;
        if (mode == ChainMode::improved) {
          if (s == IntervalShape::cross && x < n) continue;
          if (s == IntervalShape::cross_shifted) next_forced = bar(n, x);
        }
        acc = acc + w[x][y] * self(self, y + 1, left - 1, next_forced);
      }
    memo.emplace(key, acc);
    return acc;
  };
  return rec(rec, 1, i, 0);
}

// F_i as a Laurent polynomial from the path formula; F_0 = 1.
LaurentPoly f_poly(std::size_t n, std::size_t i, ChainMode mode);

// F_0..F_{2n} as the signed coefficients of det(lambda E - L).
template <class T>
std::vector<T> conserved_values(const PhasePoint<T>& x) {
  const auto cp = char_poly(build_lax(x));
  std::vector<T> f;
  f.reserve(cp.coeffs.size());
  for (std::size_t i = 0; i < cp.coeffs.size(); ++i)
    f.push_back(i % 2 == 0 ? cp.coeffs[i] : ScalarTraits<T>::zero() - cp.coeffs[i]);
  return f;
}

// F_0..F_{2n} from the path formula.
template <class T>
std::vector<T> path_values(const PhasePoint<T>& x, ChainMode mode) {
  std::vector<T> f;
  for (std::size_t i = 0; i <= 2 * x.n(); ++i) f.push_back(path_sum(x, i, mode));
  return f;
}

// e_i(values); e_0 = 1.
template <class T>
T elementary_symmetric(std::size_t i, const std::vector<T>& values) {
  using Tr = ScalarTraits<T>;
  if (i > values.size()) throw IndexMismatch("elementary_symmetric: i exceeds the length");
  std::vector<T> e(i + 1, Tr::zero());
  e[0] = Tr::one();
  for (const auto& v : values)
    for (std::size_t k = i; k >= 1; --k) e[k] = e[k] + v * e[k - 1];
  return e[i];
}

// Torus weights eps_1..eps_n; their characters are e^{eps_j}.
struct EquivariantParams {
  std::vector<double> eps;
};

// F_i(x) - e_i(t_1..t_n, t_1^{-1}..t_n^{-1}) for torus characters t_j.
template <class T>
T ideal_generator(std::size_t i, const PhasePoint<T>& x, const std::vector<T>& characters) {
  if (i < 1 || i > 2 * x.n()) throw IndexMismatch("ideal_generator: i must lie in 1..2n");
  if (characters.size() != x.n()) throw IndexMismatch("ideal_generator: need n characters");
  std::vector<T> vals = characters;
  for (const auto& t : characters) vals.push_back(ScalarTraits<T>::reciprocal(t));
  return conserved_values(x)[i] - elementary_symmetric(i, vals);
}

inline double ideal_generator(std::size_t i, const PhasePoint<double>& x,
                              const EquivariantParams& params) {
  std::vector<double> t;
  for (double e : params.eps) t.push_back(std::exp(e));
  return ideal_generator(i, x, t);
}

// Cross-checks of the path formula through M = D^{-1} Z^{-1} N B D.
struct AppendixReport {
  bool c_factorization = false;  // C = Z (D Lambda D^{-1})
  bool m_three_factor = false;   // M = diag * bidiagonal * (I + tail-product block)
  bool m_entry_law = false;      // M_pq = (-1)^{q-p} w(p, q)
  bool charpoly_match = false;   // det(lambda Lambda - M) = det(lambda E - L)

  bool all() const { return c_factorization && m_three_factor && m_entry_law && charpoly_match; }
};

// DegeneratePoint when some Q_i = 0 (D is then singular).
AppendixReport appendix_oracle(const PhasePoint<Rational>& x);

}  // namespace toda
