#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "toda/conserved.hpp"
#include "toda/random_points.hpp"
#include "toda/serialize.hpp"

using namespace toda;
using oracle::R;

namespace {

LaurentPoly z(std::size_t n, std::size_t i) { return LaurentPoly::variable(n, {VarKind::z, i - 1}); }
LaurentPoly q(std::size_t n, std::size_t i) { return LaurentPoly::variable(n, {VarKind::Q, i - 1}); }
LaurentPoly one(std::size_t n) { return LaurentPoly::constant(n, 1); }

LaurentPoly random_poly(RandomSource& rng, std::size_t n) {
  LaurentPoly p = LaurentPoly::constant(n, 0);
  std::uniform_int_distribution<int> ze(-2, 2), qe(0, 2);
  for (int t = 0; t < 4; ++t) {
    std::vector<int> a(n), b(n);
    for (auto& e : a) e = ze(rng.engine());
    for (auto& e : b) e = qe(rng.engine());
    p = p + LaurentPoly::monomial(n, rng.rational(), a, b);
  }
  return p;
}

}  // namespace

TEST_CASE("arithmetic") {
  CHECK(z(1, 1) * z(1, 1).monomial_inverse() == one(1));
  const auto a = one(1) - q(1, 1);
  CHECK(a * a == one(1) - Rational(2) * q(1, 1) + q(1, 1) * q(1, 1));
  CHECK((a - a).is_zero());
  CHECK((a - a).to_string() == "0");
  CHECK_THROWS_AS(z(1, 1) + z(2, 1), IndexMismatch);
  CHECK_THROWS_AS(LaurentPoly::variable(2, {VarKind::z, 2}), UnknownVariable);
  CHECK_THROWS_AS(LaurentPoly::monomial(1, 1, {0}, {-1}), IndexMismatch);

  for (std::size_t n = 1; n <= 4; ++n) {
    LaurentPoly prod = one(n);
    for (std::size_t k = 1; k <= n; ++k) prod = prod * interval_weight(n, k, k) * interval_weight(n, bar(n, k), bar(n, k));
    CHECK(prod == one(n));
  }
}

TEST_CASE("text and JSON forms") {
  const auto p = Rational(3) * z(2, 1) * z(2, 2).monomial_inverse() * q(2, 2) - one(2);
  CHECK(p.to_string() == "3 * z1 * z2^-1 * Q2 + -1");
  const auto j = poly_to_json(p);
  CHECK(j["terms"][0]["coef"] == "3");
  CHECK(poly_from_json(j) == p);
}

TEST_CASE("evaluate") {
  const auto x = oracle::example_point();
  CHECK(evaluate(f_poly(2, 1, ChainMode::improved), x) == R("61/15"));
  CHECK(evaluate(f_poly(2, 2, ChainMode::improved), x) == R("223/30"));
  CHECK(evaluate(one(2), x) == 1);
  CHECK(evaluate(LaurentPoly(Rational(1)), x) == 1);
  const std::vector<Rational> zs{0, 1}, qs{1, 1};
  CHECK_THROWS_AS(evaluate<Rational>(z(2, 1).monomial_inverse(), std::span<const Rational>(zs),
                                     std::span<const Rational>(qs)),
                  ZeroBase);

  RandomSource rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto a = random_poly(rng, 3), b = random_poly(rng, 3);
    const auto pt = rng.point(3);
    CHECK(evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt));
    CHECK(evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt));
  }
}

TEST_CASE("partial derivatives") {
  const Var z1{VarKind::z, 0}, q1{VarKind::Q, 0};
  const auto w = z(1, 1).monomial_inverse();
  CHECK(partial_derivative(w, z1) == -(w * w));
  CHECK(partial_derivative((one(1) - q(1, 1)) * z(1, 1), q1) == -z(1, 1));
  CHECK_THROWS_AS(partial_derivative(w, Var{VarKind::Q, 3}), UnknownVariable);

  // F_1 at n = 2: d/dz1 = 1 - Q1 - z1^-2.
  const auto f1 = f_poly(2, 1, ChainMode::improved);
  const auto d = partial_derivative(f1, z1);
  CHECK(d == one(2) - q(2, 1) - z(2, 1).monomial_inverse() * z(2, 1).monomial_inverse());

  RandomSource rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_poly(rng, 2), b = random_poly(rng, 2);
    for (Var v : {Var{VarKind::z, 0}, Var{VarKind::z, 1}, Var{VarKind::Q, 0}, Var{VarKind::Q, 1}})
      CHECK(partial_derivative(a * b, v) == partial_derivative(a, v) * b + a * partial_derivative(b, v));
  }

  // Finite-difference smoke test of dF_2/dz_a and dF_2/dQ_a at a real point.
  const auto f2 = f_poly(2, 2, ChainMode::improved);
  const std::vector<double> u{1.3, 0.7, 0.4, -0.6};  // z1, z2, Q1, Q2
  auto value = [&](const std::vector<double>& v) {
    return evaluate(f2, PhasePoint<double>({v[0], v[1]}, {v[2], v[3]}));
  };
  const std::vector<Var> vars{{VarKind::z, 0}, {VarKind::z, 1}, {VarKind::Q, 0}, {VarKind::Q, 1}};
  for (std::size_t a = 0; a < 4; ++a) {
    const double exact = evaluate(partial_derivative(f2, vars[a]), PhasePoint<double>({u[0], u[1]}, {u[2], u[3]}));
    const double fd = oracle::central_difference(value, u, a);
    CHECK(std::fabs(exact - fd) <= 1e-6 * std::max(1.0, std::fabs(exact)));
  }
}
