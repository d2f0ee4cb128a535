#include "toda/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace toda {

SymbolicLax::SymbolicLax(std::size_t n) : n_(n), lax_(build_lax(symbolic_point(n))) {
  for (std::size_t a = 0; a < 2 * n; ++a) {
    const Var v = coordinate(n, a);
    partials_.push_back(lax_.map([&](const LaurentPoly& p) {
      return partial_derivative(p.with_index_bound(n), v);
    }));
  }
}

double Trajectory::max_drift() const {
  double m = 0.0;
  for (double d : drift) m = std::max(m, d);
  return m;
}

double conserved_drift(const std::vector<double>& f0, const std::vector<double>& f) {
  double worst = 0.0;
  for (std::size_t i = 1; i < f0.size(); ++i)
    worst = std::max(worst, std::fabs(f[i] - f0[i]) / std::max(1.0, std::fabs(f0[i])));
  return worst;
}

namespace {

using State = std::vector<double>;  // (Q_1..Q_n, z_1..z_n)

State pack(const PhasePoint<double>& x) {
  State s(x.Q());
  s.insert(s.end(), x.z().begin(), x.z().end());
  return s;
}

PhasePoint<double> unpack(const State& s, double t) {
  const std::size_t n = s.size() / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = std::fabs(s[n + i]);
    if (!std::isfinite(s[i]) || !std::isfinite(z) || z < 1e-12 || z > 1e12)
      throw StepBlowup("integrate: |z_" + std::to_string(i + 1) + "| left [1e-12, 1e12] at t = " +
                       std::to_string(t));
  }
  return PhasePoint<double>(State(s.begin() + n, s.end()), State(s.begin(), s.begin() + n));
}

State velocity(const State& s, double t) {
  const auto v = hamilton_rhs(unpack(s, t));
  State out(v.dQ);
  out.insert(out.end(), v.dz.begin(), v.dz.end());
  return out;
}

State axpy(const State& y, double a, const State& k) {
  State r(y);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * k[i];
  return r;
}

}  // namespace

Trajectory integrate(const PhasePoint<double>& x0, double T, double h, Scheme scheme) {
  if (scheme != Scheme::rk4) throw Error("integrate: unsupported scheme");
  if (!(h > 0.0)) throw Error("integrate: step must be positive");
  if (!(T >= 0.0)) throw Error("integrate: end time must be nonnegative");

  Trajectory traj;
  unpack(pack(x0), 0.0);
  const auto f0 = conserved_values(x0);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  traj.drift.push_back(0.0);

  State y = pack(x0);
  const auto steps = static_cast<std::size_t>(std::ceil(T / h - 1e-9));
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = k * h;
    const double dt = std::min(h, T - t);
    const State k1 = velocity(y, t);
    const State k2 = velocity(axpy(y, dt / 2, k1), t);
    const State k3 = velocity(axpy(y, dt / 2, k2), t);
    const State k4 = velocity(axpy(y, dt, k3), t);
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    const double t_next = k + 1 == steps ? T : (k + 1) * h;
    auto x = unpack(y, t_next);
    traj.drift.push_back(conserved_drift(f0, conserved_values(x)));
    traj.times.push_back(t_next);
    traj.states.push_back(std::move(x));
  }
  return traj;
}

ExactFlowResult exact_flow_detail(const PhasePoint<double>& x0, double t) {
  const Matrix<double> l0 = build_lax(x0);
  const auto pm = factor_plus_minus(mat_exp(l0, t));
  // exp(t L_0) = a^{-1} b: a^{-1} = pm.plus, b = pm.minus.
  const Matrix<double> via_plus = inverse(pm.plus) * l0 * pm.plus;
  const Matrix<double> via_minus = pm.minus * l0 * inverse(pm.minus);
  return {parameters_from_lax(via_plus), via_plus, via_minus,
          max_abs_difference(via_plus, via_minus)};
}

PhasePoint<double> exact_flow(const PhasePoint<double>& x0, double t) {
  return exact_flow_detail(x0, t).point;
}

}  // namespace toda
