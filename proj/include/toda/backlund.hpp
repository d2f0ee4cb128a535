#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toda/dynamics.hpp"
#include "toda/lax.hpp"
#include "toda/splitting.hpp"

namespace toda {

// C = K R^{-1} with K in G_-, R in G_+, written in the auxiliaries
// a_i = Q_i z_i, b_i = z_i, M_i = 1 - a_i / b_{i+1},
// N_i = 1 - a_i a_{i+1} / (b_{i+1} b_{i+2}).
template <class T>
struct KRFactors {
  Matrix<T> K;
  Matrix<T> R;
  std::vector<T> a;  // a_1..a_n
  std::vector<T> b;  // b_1..b_n
  std::vector<T> M;  // M_1..M_{n-1}
  std::vector<T> N;  // N_1..N_{n-2}
};

// DegeneratePoint when some M_i (1 <= i <= n-1) vanishes.
template <class T>
KRFactors<T> kr_factors(const PhasePoint<T>& x) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = x.n();
  KRFactors<T> f;
  for (std::size_t i = 1; i <= n; ++i) {
    f.a.push_back(x.q_at(i) * x.z_at(i));
    f.b.push_back(x.z_at(i));
  }
  auto a = [&](std::size_t i) { return f.a[i - 1]; };
  auto b = [&](std::size_t i) { return i <= n ? f.b[i - 1] : Tr::one(); };
  for (std::size_t i = 1; i < n; ++i) {
    const T m = Tr::one() - a(i) * Tr::reciprocal(b(i + 1));
    if (Tr::pivot_vanishes(m, 1.0))
      throw DegeneratePoint("kr_factors: M_" + std::to_string(i) + " vanishes");
    f.M.push_back(m);
  }
  for (std::size_t i = 1; i + 1 < n; ++i)
    f.N.push_back(Tr::one() - a(i) * a(i + 1) * Tr::reciprocal(b(i + 1) * b(i + 2)));
  // M_0 = 1 and N_0 = 1 at the top-left corner.
  auto m = [&](std::size_t i) { return i == 0 ? Tr::one() : f.M[i - 1]; };
  auto nn = [&](std::size_t i) { return i == 0 ? Tr::one() : f.N[i - 1]; };
  auto minv = [&](std::size_t i) { return Tr::reciprocal(m(i)); };

  Matrix<T> k11(n), r11(n), r22 = Matrix<T>::identity(n);
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n) {
      k11(i - 1, i - 1) = nn(i - 1) * b(i) * minv(i);
      k11(i - 1, i) = Tr::one();
      k11(i, i - 1) = m(i - 1) * a(i) * b(i) * minv(i);
      r11(i - 1, i - 1) = m(i - 1) * minv(i) * b(i);
      r11(i - 1, i) = Tr::one();
    } else {
      k11(n - 1, n - 1) = b(n);
      r11(n - 1, n - 1) = m(n - 1) * b(n);
    }
  }
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t s = n - j;
    r22(j - 1, j) = m(s - 1) * a(s) * b(s) * minv(s) * Tr::reciprocal(b(s + 1));
  }

  f.K = Matrix<T>(2 * n);
  f.K.set_block(0, 0, k11);
  f.K.set_block(n, n, reverse_conjugate(k11));
  f.K(n, n - 1) = m(n - 1) * a(n) * b(n);
  f.R = Matrix<T>(2 * n);
  f.R.set_block(0, 0, r11);
  f.R.set_block(n, n, r22);

  const Matrix<T> c = build_factors(x).C;
  const Matrix<T> rebuilt = f.K * inverse(f.R);
  const double scale = c.max_magnitude();
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j)
      if (!Tr::near(rebuilt(i, j), c(i, j), scale))
        throw Error("kr_factors: C = K R^{-1} failed (internal error)");
  return f;
}

// L+ = K^{-1} L K, read back through parameters_from_lax.
template <class T>
PhasePoint<T> backlund_conjugate(const PhasePoint<T>& x) {
  const Matrix<T> k = kr_factors(x).K;
  return parameters_from_lax(inverse(k) * build_lax(x) * k);
}

// Closed-form map with M_i = 1 - Q_i z_i / z_{i+1}, M_0 = M_n = M_{n+1} = 1,
// z_{n+1} = 1 and Q_0^+ = 0:
//   Q_i^+ = (M_{i-1} M_{i+1} / M_i^2) (z_i / z_{i+1})^2 Q_i
//   z_i^+ = ((1 - Q_{i-1}^+) / (1 - Q_i^+)) (M_{i-1} / M_i) z_i
template <class T>
PhasePoint<T> backlund_map(const PhasePoint<T>& x) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = x.n();
  const T one = Tr::one();
  std::vector<T> m(n + 2, one);
  for (std::size_t i = 1; i < n; ++i) {
    m[i] = one - x.q_at(i) * x.z_at(i) * Tr::reciprocal(x.z_at(i + 1));
    if (Tr::pivot_vanishes(m[i], 1.0))
      throw DegeneratePoint("backlund_map: M_" + std::to_string(i) + " vanishes");
  }
  std::vector<T> qp(n + 1, Tr::zero()), zp;
  for (std::size_t i = 1; i <= n; ++i) {
    const T ratio = x.z_at(i) * Tr::reciprocal(x.z_at(i + 1));
    qp[i] = m[i - 1] * m[i + 1] * Tr::reciprocal(m[i] * m[i]) * ratio * ratio * x.q_at(i);
    if (Tr::pivot_vanishes(one - qp[i], 1.0))
      throw DegeneratePoint("backlund_map: 1 - Q_" + std::to_string(i) + "^+ vanishes");
  }
  for (std::size_t i = 1; i <= n; ++i)
    zp.push_back((one - qp[i - 1]) * Tr::reciprocal(one - qp[i]) * m[i - 1] *
                 Tr::reciprocal(m[i]) * x.z_at(i));
  return PhasePoint<T>(std::move(zp), std::vector<T>(qp.begin() + 1, qp.end()));
}

enum class BacklundRoute { map, conjugate };

// x, B(x), B(B(x)), ... (steps + 1 points). A failure names its step.
template <class T>
std::vector<PhasePoint<T>> iterate(const PhasePoint<T>& x, std::size_t steps,
                                   BacklundRoute route = BacklundRoute::map) {
  std::vector<PhasePoint<T>> out{x};
  for (std::size_t s = 1; s <= steps; ++s) {
    try {
      out.push_back(route == BacklundRoute::map ? backlund_map(out.back())
                                                : backlund_conjugate(out.back()));
    } catch (const DegeneratePoint& e) {
      throw DegeneratePoint("iterate: step " + std::to_string(s) + ": " + e.what());
    }
  }
  return out;
}

struct FlowCommutation {
  PhasePoint<double> flow_then_map;
  PhasePoint<double> map_then_flow;
  double discrepancy;  // max coordinate difference
};

// Compares B(flow_t(x)) with flow_t(B(x)), both flows by RK4 with step h.
FlowCommutation flow_commutation_check(const PhasePoint<double>& x, double t, double h = 1e-4);

}  // namespace toda
