#pragma once

#include <cstddef>
#include <vector>

#include "toda/conserved.hpp"
#include "toda/lax.hpp"
#include "toda/laurent.hpp"
#include "toda/splitting.hpp"

namespace toda {

// Right-hand side of the Lax equation dL/dt = [L, pi_+(L)].
template <Scalar T>
Matrix<T> lax_rhs(const Matrix<T>& lax) {
  return commutator(lax, project(lax).plus);
}

template <class T>
struct PhaseVelocity {
  std::vector<T> dQ;
  std::vector<T> dz;
};

// The flow in (z, Q) coordinates, with Q_0 = z_0 = 0:
//   Q_i'/Q_i = -(1-Q_{i-1}) z_i^{-1} + (1-Q_i)(z_i + z_{i+1}^{-1}) - (1-Q_{i+1}) z_{i+1}
//   Q_n'/Q_n = (1-Q_n) z_n - (1-Q_{n-1}) z_n^{-1}
//   z_i'/z_i = Q_i (z_i + z_{i+1}^{-1}) - Q_{i-1} (z_{i-1} + z_i^{-1})
//   z_n'/z_n = Q_n z_n - Q_{n-1} (z_{n-1} + z_n^{-1})
template <class T>
PhaseVelocity<T> hamilton_rhs(const PhasePoint<T>& x) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = x.n();
  const T one = Tr::one();
  auto z = [&](std::size_t i) { return x.z_at(i); };
  auto q = [&](std::size_t i) { return x.q_at(i); };
  auto zinv = [&](std::size_t i) { return Tr::reciprocal(x.z_at(i)); };

  PhaseVelocity<T> v;
  for (std::size_t i = 1; i <= n; ++i) {
    T rq, rz;
    if (i < n) {
      rq = (one - q(i)) * (z(i) + zinv(i + 1)) - (one - q(i - 1)) * zinv(i) -
           (one - q(i + 1)) * z(i + 1);
      rz = q(i) * (z(i) + zinv(i + 1));
    } else {
      rq = (one - q(n)) * z(n) - (one - q(n - 1)) * zinv(n);
      rz = q(n) * z(n);
    }
    if (i > 1) rz = rz - q(i - 1) * (z(i - 1) + zinv(i));
    v.dQ.push_back(q(i) * rq);
    v.dz.push_back(z(i) * rz);
  }
  return v;
}

// Structure matrix of the bracket on u = (Q_1..Q_n, z_1..z_n):
// {Q_i, z_i} = Q_i z_i, {Q_i, z_{i+1}} = -Q_i z_{i+1}, all others zero.
template <class T>
Matrix<T> poisson_bracket_matrix(const PhasePoint<T>& x) {
  using Tr = ScalarTraits<T>;
  const std::size_t n = x.n();
  Matrix<T> pi(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const T a = x.Q()[i] * x.z()[i];
    pi(i, n + i) = a;
    pi(n + i, i) = Tr::zero() - a;
    if (i + 1 < n) {
      const T b = Tr::zero() - x.Q()[i] * x.z()[i + 1];
      pi(i, n + i + 1) = b;
      pi(n + i + 1, i) = Tr::zero() - b;
    }
  }
  return pi;
}

// The coordinate u_a for a in 0..2n-1 in the order (Q_1..Q_n, z_1..z_n).
inline Var coordinate(std::size_t n, std::size_t a) {
  return a < n ? Var{VarKind::Q, a} : Var{VarKind::z, a - n};
}

// Exact gradient of f with respect to u, evaluated at x.
template <class T>
std::vector<T> gradient(const LaurentPoly& f, const PhasePoint<T>& x) {
  std::vector<T> g;
  for (std::size_t a = 0; a < 2 * x.n(); ++a)
    g.push_back(evaluate(partial_derivative(f.with_index_bound(x.n()), coordinate(x.n(), a)), x));
  return g;
}

// {f, g}(x) = grad f . Pi . grad g.
template <class T>
T poisson_bracket(const LaurentPoly& f, const LaurentPoly& g, const PhasePoint<T>& x) {
  const auto pi = poisson_bracket_matrix(x);
  const auto gf = gradient(f, x), gg = gradient(g, x);
  T acc = ScalarTraits<T>::zero();
  for (std::size_t a = 0; a < gf.size(); ++a)
    for (std::size_t b = 0; b < gg.size(); ++b) acc = acc + gf[a] * pi(a, b) * gg[b];
  return acc;
}

// The symbolic Lax matrix of rank n with its partial derivatives, for exact
// chain-rule computations at rational points.
class SymbolicLax {
 public:
  explicit SymbolicLax(std::size_t n);

  std::size_t n() const { return n_; }
  const Matrix<LaurentPoly>& matrix() const { return lax_; }
  // d L / d u_a with u = (Q_1..Q_n, z_1..z_n).
  const Matrix<LaurentPoly>& derivative(std::size_t a) const { return partials_[a]; }

  template <class T>
  Matrix<T> evaluate_at(const Matrix<LaurentPoly>& m, const PhasePoint<T>& x) const {
    return m.map([&](const LaurentPoly& p) { return evaluate(p, x); });
  }

  // sum_a (dL/du_a)(x) * velocity_a.
  template <class T>
  Matrix<T> directional_derivative(const PhasePoint<T>& x, const PhaseVelocity<T>& v) const {
    Matrix<T> acc(2 * n_);
    for (std::size_t a = 0; a < 2 * n_; ++a) {
      const T& speed = a < n_ ? v.dQ[a] : v.dz[a - n_];
      if (ScalarTraits<T>::is_zero(speed)) continue;
      acc = acc + speed * evaluate_at(partials_[a], x);
    }
    return acc;
  }

 private:
  std::size_t n_;
  Matrix<LaurentPoly> lax_;
  std::vector<Matrix<LaurentPoly>> partials_;
};

// Time-stamped states of a fixed-step integration; drift[k] is
// max_i |F_i(t_k) - F_i(t_0)| / max(1, |F_i(t_0)|) over i = 1..2n.
struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint<double>> states;
  std::vector<double> drift;

  double max_drift() const;
};

enum class Scheme { rk4 };

// Classical RK4 on hamilton_rhs with step h (the last step is shortened to
// land on T). StepBlowup when some |z_i| leaves [1e-12, 1e12].
Trajectory integrate(const PhasePoint<double>& x0, double T, double h, Scheme scheme = Scheme::rk4);

double conserved_drift(const std::vector<double>& f0, const std::vector<double>& f);

struct ExactFlowResult {
  PhasePoint<double> point;
  Matrix<double> via_plus;   // a L_0 a^{-1}
  Matrix<double> via_minus;  // b L_0 b^{-1}
  double route_gap;          // max |via_plus - via_minus|
};

// Solution of the Lax equation by factoring exp(t L_0) = a^{-1} b with
// a in G_+, b in G_-, then L(t) = a L_0 a^{-1} = b L_0 b^{-1}.
ExactFlowResult exact_flow_detail(const PhasePoint<double>& x0, double t);
PhasePoint<double> exact_flow(const PhasePoint<double>& x0, double t);

// H = F_1 = tr L.
template <class T>
T hamiltonian(const PhasePoint<T>& x) {
  return build_lax(x).trace();
}

}  // namespace toda
