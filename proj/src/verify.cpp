#include "toda/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <sstream>

#include "toda/backlund.hpp"
#include "toda/canonical.hpp"
#include "toda/conserved.hpp"
#include "toda/dynamics.hpp"
#include "toda/random_points.hpp"

namespace toda {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::info: return "info";
  }
  return "fail";
}

bool VerifyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

std::string VerifyReport::to_json_lines() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) ++failed;
    Json line{{"id", c.id},
              {"name", c.name},
              {"anchor", c.anchor},
              {"status", to_string(c.status)},
              {"points", c.points},
              {"resamples", c.resamples},
              {"detail", c.detail},
              {"counterexample", c.counterexample}};
    out << line.dump() << '\n';
  }
  Json summary{{"overall", passed() ? "pass" : "fail"},
               {"checks", checks.size()},
               {"failed", failed},
               {"seed", seed}};
  out << summary.dump() << '\n';
  return out.str();
}

namespace {

using Q = Rational;
using Poly = LaurentPoly;

constexpr std::size_t kMaxResample = 1000;

struct Ctx {
  Ctx(const VerifySuiteConfig& c, std::uint64_t stream) : cfg(c), rng(derive_seed(c.seed, stream)) {}

  const VerifySuiteConfig& cfg;
  RandomSource rng;
  CheckResult result;

  bool failed() const { return result.status == CheckStatus::fail; }

  void fail(const std::string& why, Json where = nullptr) {
    if (failed()) return;
    result.status = CheckStatus::fail;
    result.detail = why;
    result.counterexample = std::move(where);
  }

  void expect(bool ok, const std::string& why, const Json& where = nullptr) {
    if (!ok) fail(why, where);
  }

  // Runs f on `count` sampled points, resampling whenever f hits a
  // non-generic point. Stops at the first failure.
  template <class Draw, class F>
  void for_points(std::size_t count, Draw draw, F f) {
    for (std::size_t k = 0; k < count && !failed(); ++k) {
      std::size_t attempts = 0;
      while (true) {
        auto x = draw();
        try {
          f(x);
          ++result.points;
          break;
        } catch (const DegeneratePoint&) {
          ++result.resamples;
          if (++attempts == kMaxResample) {
            fail("no generic point found after " + std::to_string(kMaxResample) + " draws");
            return;
          }
        }
      }
    }
  }

  template <class F>
  void for_rational_points(std::size_t n, std::size_t count, F f) {
    for_points(count, [&] { return rng.point(n); }, f);
  }
};

Poly var_z(std::size_t n, std::size_t i) { return Poly::variable(n, {VarKind::z, i - 1}); }
Poly var_q(std::size_t n, std::size_t i) { return Poly::variable(n, {VarKind::Q, i - 1}); }
Poly cst(std::size_t n, const Q& c) { return Poly::constant(n, c); }
Poly inv_z(std::size_t n, std::size_t i) { return var_z(n, i).monomial_inverse(); }

Matrix<Poly> printed_lax_n2() {
  const std::size_t n = 2;
  const Poly one = cst(n, 1), z1 = var_z(n, 1), z2 = var_z(n, 2), q1 = var_q(n, 1), q2 = var_q(n, 2);
  const Poly w1 = inv_z(n, 1), w2 = inv_z(n, 2), zero = cst(n, 0);
  return Matrix<Poly>::from_rows({
      {(one - q1) * z1, one, zero, one},
      {-(q1 * (one - q2) * z1 * z2), (one - q2) * z2, one, zero},
      {(one - q1) * q1 * q2 * z1, -((one - q1) * q2), (one - q1) * w2, q1},
      {-(q1 * q2), q2 * w1, -(w1 * w2), w1},
  });
}

Poly printed_f1(std::size_t n) {
  const Poly one = cst(n, 1);
  Poly f = inv_z(n, 1);
  for (std::size_t k = 1; k <= n; ++k) f = f + (one - var_q(n, k)) * var_z(n, k);
  for (std::size_t k = 2; k <= n; ++k) f = f + (one - var_q(n, k - 1)) * inv_z(n, k);
  return f;
}

Poly printed_f2_n2() {
  const std::size_t n = 2;
  const Poly one = cst(n, 1), z1 = var_z(n, 1), z2 = var_z(n, 2), q1 = var_q(n, 1), q2 = var_q(n, 2);
  const Poly w1 = inv_z(n, 1), w2 = inv_z(n, 2);
  return (one - q2) * z1 * z2 + (one - q1) * (one - q1) * z1 * w2 + cst(n, 2) - cst(n, 2) * q1 +
         q1 * q2 + (one - q2) * w1 * z2 + w1 * w2;
}

// Printed n = 2 Backlund formulas evaluated at a point.
PhasePoint<Q> printed_backlund_n2(const PhasePoint<Q>& x) {
  const Q z1 = x.z()[0], z2 = x.z()[1], q1 = x.Q()[0], q2 = x.Q()[1];
  const Q m = z2 - q1 * z1;
  if (sgn(m) == 0) throw DegeneratePoint("z2 - Q1 z1 = 0");
  const Q q1p = z1 * z1 / (m * m) * q1;
  const Q q2p = m * z2 * q2;
  if (q1p == 1 || q2p == 1) throw DegeneratePoint("Q^+ = 1");
  const Q z1p = 1 / (1 - q1p) * z1 * z2 / m;
  const Q z2p = (1 - q1p) / (1 - q2p) * m;
  return PhasePoint<Q>({z1p, z2p}, {q1p, q2p});
}

Json vals(const std::vector<Q>& v) { return values_to_json(v); }

Json at(const PhasePoint<Q>& x, const std::vector<Q>& f) {
  Json j = point_to_json(x);
  j["F"] = vals(f);
  return j;
}

std::size_t cap(std::size_t value, std::size_t limit) { return std::min(value, limit); }

// ---- rational identities ---------------------------------------------------

void check_printed_lax(Ctx& c) {
  const Matrix<Poly> printed = printed_lax_n2();
  const Matrix<Poly> symbolic = build_lax(symbolic_point(2));
  c.expect(symbolic == printed, "symbolic n=2 Lax matrix differs from the printed entries");
  c.for_rational_points(2, c.cfg.trials, [&](const PhasePoint<Q>& x) {
    const Matrix<Q> l = build_lax(x);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (l(i, j) != evaluate(printed(i, j), x))
          return c.fail("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") differs",
                        point_to_json(x));
  });
}

void check_printed_f(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max; ++n)
    for (auto mode : {ChainMode::original, ChainMode::improved})
      c.expect(f_poly(n, 1, mode) == printed_f1(n), "F_1 differs from the printed form at n=" + std::to_string(n));
  for (auto mode : {ChainMode::original, ChainMode::improved})
    c.expect(f_poly(2, 2, mode) == printed_f2_n2(), "F_2 differs from the printed form at n=2");
  ++c.result.points;
}

void check_route_equivalence(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n) {
    std::vector<Poly> polys;
    for (std::size_t i = 0; i <= 2 * n; ++i) polys.push_back(f_poly(n, i, ChainMode::improved));
    c.for_rational_points(n, c.cfg.trials, [&](const PhasePoint<Q>& x) {
      const auto f = conserved_values(x);
      const auto orig = path_values(x, ChainMode::original);
      const auto impr = path_values(x, ChainMode::improved);
      std::vector<Q> sym;
      for (const auto& p : polys) sym.push_back(evaluate(p, x));
      if (f != orig || f != impr || f != sym) {
        Json where = point_to_json(x);
        where["char_poly"] = vals(f);
        where["path_original"] = vals(orig);
        where["path_improved"] = vals(impr);
        c.fail("routes disagree", where);
      }
    });
  }
}

void check_reciprocal(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n)
    c.for_rational_points(n, c.cfg.trials, [&](const PhasePoint<Q>& x) {
      const auto f = conserved_values(x);
      bool ok = f[0] == 1 && f[2 * n] == 1;
      for (std::size_t i = 0; i <= 2 * n; ++i) ok = ok && f[i] == f[2 * n - i];
      c.expect(ok, "F_i != F_{2n-i}", at(x, f));
    });
}

// Alternative index F_i = F_{2n+1-i}, i = 1..2n: recorded, never asserted.
void check_stated_symmetry(Ctx& c) {
  std::size_t holds = 0;
  for (std::size_t n = 1; n <= c.cfg.n_max; ++n)
    c.for_rational_points(n, c.cfg.trials, [&](const PhasePoint<Q>& x) {
      const auto f = conserved_values(x);
      bool ok = true;
      for (std::size_t i = 1; i <= 2 * n; ++i) ok = ok && f[i] == f[2 * n + 1 - i];
      if (ok) ++holds;
      else if (c.result.counterexample.is_null())
        c.result.counterexample = at(x, f);
    });
  c.result.status = CheckStatus::info;
  c.result.detail = "F_i = F_{2n+1-i} for all i held at " + std::to_string(holds) + " of " +
                    std::to_string(c.result.points) + " points";
}

void check_q_zero(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max; ++n) {
    std::vector<Poly> roots;
    for (std::size_t k = 1; k <= n; ++k) roots.push_back(var_z(n, k));
    for (std::size_t k = 1; k <= n; ++k) roots.push_back(inv_z(n, k));
    for (std::size_t i = 0; i <= 2 * n; ++i)
      for (auto mode : {ChainMode::original, ChainMode::improved})
        c.expect(f_poly(n, i, mode).at_zero_q() == elementary_symmetric(i, roots).with_index_bound(n),
                 "F_" + std::to_string(i) + " at Q=0 is not e_i(z, 1/z) for n=" + std::to_string(n));
  }
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n)
    c.for_points(
        c.cfg.trials, [&] { return c.rng.canonical(n).q; },
        [&](const std::vector<double>& eps) {
          std::vector<double> z;
          for (double e : eps) z.push_back(std::exp(e));
          const PhasePoint<double> x(z, std::vector<double>(n, 0.0));
          for (std::size_t i = 1; i <= 2 * n; ++i) {
            const double g = ideal_generator(i, x, EquivariantParams{eps});
            c.expect(std::fabs(g) <= 1e-12, "ideal generator " + std::to_string(i) + " = " +
                                                std::to_string(g) + " at Q=0");
          }
        });
}

void check_gamma(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n)
    c.for_rational_points(n, c.cfg.trials, [&](const PhasePoint<Q>& x) {
      const Matrix<Q> l = build_lax(x);
      const auto g = gamma_membership(l);
      c.expect(g.in_gamma(), "L not in Gamma", point_to_json(x));
      c.expect(l.block(0, n, n) == reversal<Q>(n), "upper-right block of L is not J", point_to_json(x));
      c.expect(determinant(l) == 1, "det L != 1", point_to_json(x));
    });
}

void check_round_trip(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max + 1 && !c.failed(); ++n)
    c.for_rational_points(n, c.cfg.trials, [&](const PhasePoint<Q>& x) {
      c.expect(parameters_from_lax(build_lax(x)) == x, "round trip failed", point_to_json(x));
    });
}

void check_splitting(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n) {
    const std::size_t d = 2 * n;
    c.expect(subalgebra_dimension(n, Subset::g_plus) == 2 * n * n &&
                 subalgebra_dimension(n, Subset::g_minus) == 2 * n * n,
             "subalgebra dimension is not 2n^2 at n=" + std::to_string(n));
    c.for_points(
        c.cfg.trials, [&] { return std::make_pair(c.rng.matrix(d), c.rng.matrix(d)); },
        [&](const std::pair<Matrix<Q>, Matrix<Q>>& xy) {
          const auto& x = xy.first;
          const auto sx = project(x), sy = project(xy.second);
          const Json where = matrix_to_json(x);
          c.expect(sx.plus + sx.minus == x, "pi_+ + pi_- != id", where);
          const auto pp = project(sx.plus), pm = project(sx.minus);
          c.expect(pp.plus == sx.plus && is_zero_matrix(pp.minus), "pi_+ not idempotent", where);
          c.expect(pm.minus == sx.minus && is_zero_matrix(pm.plus), "pi_- not idempotent", where);
          c.expect(membership(sx.plus, Subset::g_plus) && membership(sx.minus, Subset::g_minus),
                   "projection outside its subalgebra", where);
          c.expect(membership(commutator(sx.plus, sy.plus), Subset::g_plus) &&
                       membership(commutator(sx.minus, sy.minus), Subset::g_minus),
                   "subalgebra not closed under commutator", where);

          const auto kr = factor_minus_plus(x);
          c.expect(kr.K * kr.R == x, "X != K R", where);
          c.expect(membership(kr.K, Subset::G_minus) && membership(kr.R, Subset::G_plus),
                   "factor outside G_-/G_+", where);
          const auto again = factor_minus_plus(kr.K * kr.R);
          c.expect(again.K == kr.K && again.R == kr.R, "refactoring changed the factors", where);
          const auto k_only = factor_minus_plus(kr.K);
          c.expect(k_only.K == kr.K && k_only.R == Matrix<Q>::identity(d), "K does not factor as (K, I)", where);
          const auto pmf = factor_plus_minus(x);
          c.expect(pmf.plus * pmf.minus == x && membership(pmf.plus, Subset::G_plus) &&
                       membership(pmf.minus, Subset::G_minus),
                   "X != (G_+)(G_-) factorization", where);
        });
  }
}

void check_lax_hamilton(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n) {
    const SymbolicLax sym(n);
    c.for_rational_points(n, c.cfg.trials, [&](const PhasePoint<Q>& x) {
      const Matrix<Q> l = build_lax(x);
      c.expect(sym.evaluate_at(sym.matrix(), x) == l, "symbolic L differs from L", point_to_json(x));
      c.expect(sym.directional_derivative(x, hamilton_rhs(x)) == lax_rhs(l),
               "chain-rule derivative differs from [L, pi_+ L]", point_to_json(x));
      const Matrix<Q> plus = project(l).plus;
      for (std::size_t i = 1; i <= 2 * n; ++i) {
        const Q expected = i <= n ? (1 - x.q_at(i)) * x.z_at(i) - (1 - x.q_at(i - 1)) / x.z_at(i) : Q(0);
        c.expect(plus(i - 1, i - 1) == expected,
                 "diagonal entry " + std::to_string(i) + " of pi_+ L differs", point_to_json(x));
      }
    });
  }
}

void check_poisson(Ctx& c) {
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n) {
    const Matrix<Poly> pi = poisson_bracket_matrix(symbolic_point(n));
    const std::size_t d = 2 * n;
    c.expect(pi + pi.transpose() == Matrix<Poly>(d), "bracket matrix not antisymmetric");
    if (n <= 3) {
      // {u_a, {u_b, u_c}} + cyclic = sum_e (Pi_ae d_e Pi_bc + Pi_be d_e Pi_ca + Pi_ce d_e Pi_ab)
      auto term = [&](std::size_t a, std::size_t b, std::size_t cc) {
        Poly s = cst(n, 0);
        for (std::size_t e = 0; e < d; ++e)
          s = s + pi(a, e) * partial_derivative(pi(b, cc), coordinate(n, e));
        return s;
      };
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          for (std::size_t cc = 0; cc < d; ++cc)
            c.expect((term(a, b, cc) + term(b, cc, a) + term(cc, a, b)).is_zero(),
                     "Jacobi identity fails at n=" + std::to_string(n));
    }
    const Poly h = f_poly(n, 1, ChainMode::improved);
    c.for_rational_points(n, c.cfg.trials, [&](const PhasePoint<Q>& x) {
      const auto v = hamilton_rhs(x);
      for (std::size_t i = 0; i < n; ++i) {
        c.expect(poisson_bracket(var_q(n, i + 1), h, x) == v.dQ[i], "{Q_i, H} differs from dQ_i",
                 point_to_json(x));
        c.expect(poisson_bracket(var_z(n, i + 1), h, x) == v.dz[i], "{z_i, H} differs from dz_i",
                 point_to_json(x));
      }
      c.expect(hamiltonian(x) == evaluate(h, x), "tr L != F_1", point_to_json(x));
    });
  }
}

void check_appendix(Ctx& c) {
  for (std::size_t n = 1; n <= cap(c.cfg.n_max, 3) && !c.failed(); ++n)
    c.for_rational_points(n, (c.cfg.trials + 1) / 2, [&](const PhasePoint<Q>& x) {
      const auto r = appendix_oracle(x);
      c.expect(r.c_factorization, "C != Z D Lambda D^-1", point_to_json(x));
      c.expect(r.m_three_factor, "three-factor form of M fails", point_to_json(x));
      c.expect(r.m_entry_law, "entry law of M fails", point_to_json(x));
      c.expect(r.charpoly_match, "det(lambda Lambda - M) != det(lambda E - L)", point_to_json(x));
    });
}

void check_backlund_routes(Ctx& c) {
  const PhasePoint<Q> worked({2, 3}, {Q(1, 2), Q(1, 5)});
  const PhasePoint<Q> image = backlund_map(worked);
  c.expect(image == PhasePoint<Q>({6, -5}, {Q(1, 2), Q(6, 5)}), "worked example image differs",
           point_to_json(image));
  c.expect(hamiltonian(worked) == Q(61, 15) && hamiltonian(image) == Q(61, 15),
           "H is not 61/15 on both sides of the worked example");
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n)
    c.for_rational_points(n, c.cfg.trials, [&](const PhasePoint<Q>& x) {
      const auto kr = kr_factors(x);
      c.expect(membership(kr.K, Subset::G_minus) && membership(kr.R, Subset::G_plus),
               "K or R outside G_-/G_+", point_to_json(x));
      const auto pm = factor_plus_minus(build_lax(x));
      c.expect(inverse(pm.minus) == kr.K, "G_- factor of L differs from K", point_to_json(x));
      const auto a = backlund_map(x);
      const auto b = backlund_conjugate(x);
      c.expect(a == b, "map and conjugation routes differ", point_to_json(x));
      c.expect(char_poly(build_lax(a)) == char_poly(build_lax(x)), "spectrum changed", point_to_json(x));
      if (n == 2)
        c.expect(printed_backlund_n2(x) == a, "printed n=2 formulas differ", point_to_json(x));
    });
  c.result.detail = "n=1 included (the pinned conventions give Q+ = z^2 Q, z+ = z / (1 - Q+))";
}

void check_backlund_iteration(Ctx& c) {
  auto run = [&](const PhasePoint<Q>& x) {
    const auto f0 = conserved_values(x);
    const auto seq = iterate(x, 10);
    for (std::size_t s = 1; s < seq.size(); ++s)
      if (conserved_values(seq[s]) != f0)
        return c.fail("F changed at step " + std::to_string(s), point_to_json(x));
  };
  run(PhasePoint<Q>({2, 3}, {Q(1, 2), Q(1, 5)}));
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n) {
    c.for_rational_points(n, cap(c.cfg.trials, 10), run);
    const auto fixed = c.rng.point_zero_q(n);
    c.expect(backlund_map(fixed) == fixed, "Q=0 point is not fixed", point_to_json(fixed));
  }
}

void check_adjoint(Ctx& c) {
  for (std::size_t n = 1; n <= cap(c.cfg.n_max, 3) && !c.failed(); ++n)
    c.for_rational_points(n, cap(c.cfg.trials, 20), [&](const PhasePoint<Q>& x) {
      const std::size_t d = 2 * n;
      Matrix<Q> gp = Matrix<Q>::identity(d), gm = Matrix<Q>::identity(d), u(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < d; ++j) gp(i, j) = c.rng.rational();
      for (std::size_t i = n; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) gp(i, j) = c.rng.rational();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) u(i, j) = c.rng.rational();
      gm.set_block(0, 0, u);
      gm.set_block(n, n, reverse_conjugate(u));
      for (std::size_t i = n; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) gm(i, j) = c.rng.rational();
      c.expect(membership(gp, Subset::G_plus) && membership(gm, Subset::G_minus),
               "sampled group elements outside G_+/G_-");
      const Matrix<Q> l = build_lax(x);
      c.expect(gamma_membership(gp * l * inverse(gp)).in_gamma1, "G_+ conjugation left Gamma_1",
               point_to_json(x));
      c.expect(gamma_membership(gm * l * inverse(gm)).in_gamma2, "G_- conjugation left Gamma_2",
               point_to_json(x));
    });
}

// ---- float identities ------------------------------------------------------

Json at(const CanonicalPoint& p) { return Json{{"q", p.q}, {"p", p.p}}; }

double coordinate_gap(const PhasePoint<double>& a, const PhasePoint<double>& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i)
    g = std::max({g, std::fabs(a.z()[i] - b.z()[i]), std::fabs(a.Q()[i] - b.Q()[i])});
  return g;
}

void check_flow_conservation(Ctx& c) {
  c.for_points(
      cap(c.cfg.trials, 5), [&] { return c.rng.canonical(3); },
      [&](const CanonicalPoint& p) {
        const auto x = to_phase(p);
        const double fine = integrate(x, 1.0, 1e-3).max_drift();
        c.expect(fine <= 1e-8, "drift " + std::to_string(fine) + " > 1e-8", at(p));
        const double coarse = integrate(x, 1.0, 0.05).max_drift();
        const double half = integrate(x, 1.0, 0.025).max_drift();
        c.expect(coarse >= 8.0 * half, "halving h from 0.05 reduced drift only by " +
                                           std::to_string(coarse / half),
                 at(p));
      });
}

void check_exact_flow(Ctx& c) {
  for (std::size_t n : {2, 3})
    c.for_points(
        cap(c.cfg.trials, 5), [&] { return c.rng.canonical(n); },
        [&](const CanonicalPoint& p) {
          const auto x = to_phase(p);
          const auto ex = exact_flow_detail(x, 0.5);
          const auto rk = integrate(x, 0.5, 1e-4).states.back();
          const double gap = coordinate_gap(ex.point, rk);
          c.expect(gap <= 1e-6, "exact flow vs RK4 gap " + std::to_string(gap), at(p));
          c.expect(ex.route_gap <= 1e-9, "a/b conjugation gap " + std::to_string(ex.route_gap), at(p));
        });
}

void check_canonical(Ctx& c) {
  const CanonicalPoint origin{{0.0, 0.0}, {0.0, 0.0}};
  const auto xo = to_phase(origin);
  c.expect(std::fabs(xo.z()[0] - 1 / std::sqrt(2.0)) <= 1e-15 && xo.z()[1] == 1.0 && xo.Q()[0] == -1.0 &&
               xo.Q()[1] == -1.0,
           "q=p=0 does not map to Q=(-1,-1), z=(1/sqrt2, 1)");
  c.expect(std::fabs(hamiltonian_canonical(origin) - (4 + 2 * std::sqrt(2.0))) <= 1e-12 &&
               std::fabs(hamiltonian(xo) - (4 + 2 * std::sqrt(2.0))) <= 1e-12,
           "H at q=p=0 is not 4 + 2 sqrt 2");
  for (std::size_t n = 1; n <= c.cfg.n_max && !c.failed(); ++n)
    c.for_points(
        cap(c.cfg.trials, 20), [&] { return c.rng.canonical(n); },
        [&](const CanonicalPoint& p) {
          const auto x = to_phase(p);
          const double dh = std::fabs(hamiltonian_canonical(p) - hamiltonian(x));
          c.expect(dh <= 1e-12, "canonical H differs by " + std::to_string(dh), at(p));
          const double db = max_abs_difference(canonical_bracket_matrix(p), poisson_bracket_matrix(x));
          c.expect(db <= 1e-10, "induced bracket differs by " + std::to_string(db), at(p));
          const auto back = from_phase(x);
          double dr = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            dr = std::max({dr, std::fabs(back.q[i] - p.q[i]), std::fabs(back.p[i] - p.p[i])});
          c.expect(dr <= 1e-12, "chart round trip off by " + std::to_string(dr), at(p));
        });
}

void check_flow_commutation(Ctx& c) {
  for (std::size_t n : {2, 3})
    c.for_points(
        cap(c.cfg.trials, 3), [&] { return c.rng.canonical(n); },
        [&](const CanonicalPoint& p) {
          const auto r = flow_commutation_check(to_phase(p), 0.3, 1e-4);
          c.expect(r.discrepancy <= 1e-6, "discrepancy " + std::to_string(r.discrepancy), at(p));
        });
}

struct Identity {
  const char* id;
  const char* name;
  const char* anchor;
  bool floating;
  void (*run)(Ctx&);
};

const std::vector<Identity>& identities() {
  static const std::vector<Identity> all = {
      {"lax_printed", "n=2 Lax matrix equals the printed entries", "L = N B C^-1", false, check_printed_lax},
      {"f_printed", "F_1 (all n) and F_2 (n=2) equal the printed forms", "F_i = sum over chains of w(x,y)", false,
       check_printed_f},
      {"f_routes", "char-poly F_i = path F_i = improved path F_i", "det(lambda E - L) = sum (-1)^i F_i lambda^{2n-i}",
       false, check_route_equivalence},
      {"f_reciprocal", "F_i = F_{2n-i}, F_0 = F_2n = 1", "det L = 1, self-reciprocal char poly", false,
       check_reciprocal},
      {"f_stated_index", "shifted symmetry F_i = F_{2n+1-i} (recorded only)", "F_i = F_{2n+1-i}", false,
       check_stated_symmetry},
      {"q_zero", "F_i at Q=0 is e_i(z, 1/z); ideal generators vanish",
       "F_i - e_i(e^eps, e^-eps)", false, check_q_zero},
      {"gamma", "L lies in Gamma_1 and Gamma_2", "Gamma = Gamma_1 cap Gamma_2", false, check_gamma},
      {"round_trip", "parameters recovered from L", "L^-1 = lower * upper", false, check_round_trip},
      {"splitting", "pi_+/pi_- projections and the X = K R factorization",
       "gl_2n = g_+ + g_-, X = K R", false, check_splitting},
      {"lax_hamilton", "chain-rule dL/dt equals [L, pi_+ L]; diagonal of pi_+ L",
       "dL/dt = [L, pi_+(L)]", false, check_lax_hamilton},
      {"poisson", "bracket antisymmetry, Jacobi, {u, H} = u'", "{Q_i, z_i} = Q_i z_i, {Q_i, z_i+1} = -Q_i z_i+1",
       false, check_poisson},
      {"appendix", "C = Z D Lambda D^-1, M factorization, entry law, char poly",
       "M = D^-1 Z^-1 N B D", false, check_appendix},
      {"backlund_routes", "closed-form map equals K^-1 L K route", "L+ = K^-1 L K", false, check_backlund_routes},
      {"backlund_invariance", "F_i invariant along 10 Backlund steps", "char poly of L+ = char poly of L", false,
       check_backlund_iteration},
      {"adjoint", "G_+ conjugation keeps Gamma_1, G_- keeps Gamma_2", "g L g^-1", false, check_adjoint},
      {"flow_conservation", "RK4 drift of F_i and fourth-order scaling", "dF_i/dt = 0", true,
       check_flow_conservation},
      {"exact_flow", "factorization flow vs RK4; a-route vs b-route", "exp(t L_0) = a^-1 b", true,
       check_exact_flow},
      {"canonical", "canonical chart: H, induced bracket, round trip", "H = 2 sum cosh(p_i) ...", true,
       check_canonical},
      {"flow_commutation", "Backlund map commutes with the flow", "d/dt L+ = [L+, pi_+(L+)]", true,
       check_flow_commutation},
  };
  return all;
}

CheckResult run_one(const VerifySuiteConfig& cfg, std::size_t index) {
  const Identity& id = identities()[index];
  Ctx c(cfg, index);
  c.result.id = id.id;
  c.result.name = id.name;
  c.result.anchor = id.anchor;
  try {
    id.run(c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  if (c.failed()) c.result.status = CheckStatus::fail;
  return c.result;
}

}  // namespace

VerifyReport run_verify(const VerifySuiteConfig& config) {
  if (config.n_max == 0) throw Error("verify: n_max must be at least 1");
  if (config.trials == 0) throw Error("verify: trials must be at least 1");
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < identities().size(); ++k) {
    const bool fl = identities()[k].floating;
    if (config.mode == VerifyMode::both || fl == (config.mode == VerifyMode::floating)) chosen.push_back(k);
  }
  std::vector<std::future<CheckResult>> jobs;
  for (std::size_t k : chosen) jobs.push_back(std::async(std::launch::async, run_one, std::cref(config), k));
  VerifyReport report;
  report.seed = config.seed;
  for (auto& j : jobs) report.checks.push_back(j.get());
  return report;
}

}  // namespace toda
