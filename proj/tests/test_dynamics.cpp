#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "toda/canonical.hpp"
#include "toda/dynamics.hpp"
#include "toda/random_points.hpp"

using namespace toda;
using oracle::R;

namespace {

double gap(const PhasePoint<double>& a, const PhasePoint<double>& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i)
    g = std::max({g, std::fabs(a.z()[i] - b.z()[i]), std::fabs(a.Q()[i] - b.Q()[i])});
  return g;
}

}  // namespace

TEST_CASE("lax_rhs") {
  RandomSource rng(43);
  for (int t = 0; t < 10; ++t) CHECK(lax_rhs(rng.matrix(6)).trace() == 0);

  // n = 1 by hand: pi_+ L = [[L11 - L22, L12], [0, 0]].
  const auto x = oracle::point({"2"}, {"1/3"});
  const auto l = build_lax(x);
  Matrix<Rational> plus(2);
  plus(0, 0) = l(0, 0) - l(1, 1);
  plus(0, 1) = l(0, 1);
  CHECK(project(l).plus == plus);
  CHECK(lax_rhs(l) == l * plus - plus * l);
}

TEST_CASE("hamilton_rhs") {
  const auto zero_q = PhasePoint<Rational>({2, 3, 5}, {0, 0, 0});
  const auto v0 = hamilton_rhs(zero_q);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(v0.dQ[i] == 0);
    CHECK(v0.dz[i] == 0);
  }
  const auto v = hamilton_rhs(oracle::point({"2"}, {"1/3"}));
  CHECK(v.dz[0] == R("4/3"));
  // Q1 ((1 - Q1) z1 - 1/z1) with Q0 = 0.
  CHECK(v.dQ[0] == R("5/18"));
}

TEST_CASE("exact Lax-Hamilton equivalence") {
  RandomSource rng(47);
  for (std::size_t n = 1; n <= 4; ++n) {
    const SymbolicLax sym(n);
    for (int t = 0; t < 50; ++t) {
      const auto x = rng.point(n);
      const auto l = build_lax(x);
      CHECK(sym.directional_derivative(x, hamilton_rhs(x)) == lax_rhs(l));
      const auto plus = project(l).plus;
      for (std::size_t i = 1; i <= 2 * n; ++i) {
        const Rational expected = i <= n ? (1 - x.q_at(i)) * x.z_at(i) - (1 - x.q_at(i - 1)) / x.z_at(i) : Rational(0);
        CHECK(plus(i - 1, i - 1) == expected);
      }
    }
  }
  // Conservation: every F_i has zero derivative along the flow.
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t i = 1; i <= 2 * n; ++i) {
      const auto f = f_poly(n, i, ChainMode::improved);
      for (int t = 0; t < 5; ++t) {
        const auto x = rng.point(n);
        const auto v = hamilton_rhs(x);
        const auto g = gradient(f, x);
        Rational d = 0;
        for (std::size_t a = 0; a < n; ++a) d += g[a] * v.dQ[a] + g[n + a] * v.dz[a];
        CHECK(d == 0);
      }
    }
}

TEST_CASE("Poisson bracket") {
  RandomSource rng(53);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto x = rng.point(n);
    const auto pi = poisson_bracket_matrix(x);
    CHECK(pi + pi.transpose() == Matrix<Rational>(2 * n));
    const auto h = f_poly(n, 1, ChainMode::original);
    const auto v = hamilton_rhs(x);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(poisson_bracket(LaurentPoly::variable(n, {VarKind::Q, i}), h, x) == v.dQ[i]);
      CHECK(poisson_bracket(LaurentPoly::variable(n, {VarKind::z, i}), h, x) == v.dz[i]);
    }
    CHECK(hamiltonian(x) == evaluate(h, x));
  }
  CHECK(hamiltonian(oracle::example_point()) == R("61/15"));

  // Jacobi on coordinate triples, exact through symbolic entries.
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto pi = poisson_bracket_matrix(symbolic_point(n));
    const std::size_t d = 2 * n;
    auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
      LaurentPoly s = LaurentPoly::constant(n, 0);
      for (std::size_t e = 0; e < d; ++e) s = s + pi(a, e) * partial_derivative(pi(b, c), coordinate(n, e));
      return s;
    };
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c) CHECK((term(a, b, c) + term(b, c, a) + term(c, a, b)).is_zero());
  }
}

TEST_CASE("canonical chart") {
  const CanonicalPoint origin{{0.0, 0.0}, {0.0, 0.0}};
  const auto x = to_phase(origin);
  CHECK(x.Q()[0] == -1.0);
  CHECK(x.Q()[1] == -1.0);
  CHECK(std::fabs(x.z()[0] - 1 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::fabs(x.z()[1] - 1.0) <= 1e-15);
  CHECK(std::fabs(hamiltonian(x) - (4 + 2 * std::sqrt(2.0))) <= 1e-12);
  CHECK(std::fabs(hamiltonian_canonical(origin) - (4 + 2 * std::sqrt(2.0))) <= 1e-12);

  RandomSource rng(59);
  for (int t = 0; t < 20; ++t) {
    const auto c = rng.canonical(3);
    const auto p = to_phase(c);
    CHECK(std::fabs(hamiltonian_canonical(c) - hamiltonian(p)) <= 1e-12);
    CHECK(max_abs_difference(canonical_bracket_matrix(c), poisson_bracket_matrix(p)) <= 1e-10);
    const auto back = from_phase(p);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::fabs(back.q[i] - c.q[i]) <= 1e-12);
      CHECK(std::fabs(back.p[i] - c.p[i]) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(from_phase(PhasePoint<double>({1.0}, {0.5})), OutOfChart);
  CHECK_THROWS_AS(from_phase(PhasePoint<double>({-1.0}, {-0.5})), OutOfChart);

  // Finite-difference check of the analytic Jacobian through H: dH/dp_i = z_i-part of the flow.
  const auto c = rng.canonical(2);
  const std::vector<double> u{c.q[0], c.q[1], c.p[0], c.p[1]};
  auto h = [](const std::vector<double>& v) { return hamiltonian_canonical({{v[0], v[1]}, {v[2], v[3]}}); };
  // q_i' = dH/dp_i and Q_n = -e^{q_n}, so Q_n' = Q_n q_n'.
  const auto p = to_phase(c);
  const double qdot2 = oracle::central_difference(h, u, 3);
  CHECK(std::fabs(hamilton_rhs(p).dQ[1] - p.Q()[1] * qdot2) <= 1e-6);
}

TEST_CASE("integrate") {
  const auto x = to_phase(CanonicalPoint{{0.2, -0.1, 0.4}, {0.1, 0.3, -0.2}});
  const auto t0 = integrate(x, 0.0, 1e-3);
  CHECK(t0.states.size() == 1);
  CHECK(t0.max_drift() == 0.0);

  const auto traj = integrate(x, 1.0, 1e-3);
  CHECK(traj.times.size() == 1001);
  CHECK(traj.times.back() == 1.0);
  CHECK(traj.max_drift() <= 1e-8);
  for (std::size_t k = 1; k < traj.times.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);

  const double coarse = integrate(x, 1.0, 0.05).max_drift();
  const double half = integrate(x, 1.0, 0.025).max_drift();
  CHECK(coarse >= 8.0 * half);

  const PhasePoint<double> still({1.5, 0.5}, {0.0, 0.0});
  const auto s = integrate(still, 0.5, 0.01);
  CHECK(s.states.back() == still);

  CHECK_THROWS_AS(integrate(x, 1.0, 0.0), Error);
  CHECK_THROWS_AS(integrate(PhasePoint<double>({1e-13}, {0.5}), 1.0, 0.1), StepBlowup);
}

TEST_CASE("exact flow") {
  RandomSource rng(61);
  const auto x0 = to_phase(rng.canonical(2));
  CHECK(gap(exact_flow(x0, 0.0), x0) <= 1e-12);
  for (std::size_t n : {2, 3}) {
    const auto x = to_phase(rng.canonical(n));
    const auto e = exact_flow_detail(x, 0.5);
    CHECK(e.route_gap <= 1e-9);
    CHECK(gap(e.point, integrate(x, 0.5, 1e-4).states.back()) <= 1e-6);
  }
}
