#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "toda/lax.hpp"
#include "toda/linalg.hpp"
#include "toda/random_points.hpp"
#include "toda/serialize.hpp"

using namespace toda;
using oracle::R;

namespace {

// The n = 2 Lax matrix transcribed entrywise.
Matrix<Rational> printed_lax(const PhasePoint<Rational>& x) {
  const Rational z1 = x.z()[0], z2 = x.z()[1], q1 = x.Q()[0], q2 = x.Q()[1];
  return Matrix<Rational>::from_rows({
      {(1 - q1) * z1, 1, 0, 1},
      {-q1 * (1 - q2) * z1 * z2, (1 - q2) * z2, 1, 0},
      {(1 - q1) * q1 * q2 * z1, -(1 - q1) * q2, (1 - q1) / z2, q1},
      {-q1 * q2, q2 / z1, -1 / (z1 * z2), 1 / z1},
  });
}

}  // namespace

TEST_CASE("phase point validation") {
  CHECK_THROWS_AS(oracle::point({"0", "1"}, {"1", "1"}), ZeroBase);
  CHECK_THROWS_AS(oracle::point({"1"}, {"1", "1"}), IndexMismatch);
  CHECK_THROWS_AS(PhasePoint<Rational>({}, {}), IndexMismatch);
  const auto x = oracle::example_point();
  CHECK(x.z_at(0) == 0);
  CHECK(x.z_at(3) == 1);
  CHECK(x.q_at(3) == 0);
}

TEST_CASE("build_factors") {
  const auto f = build_factors(oracle::point({"2"}, {"1/3"}));
  CHECK(f.N == Matrix<Rational>::from_rows({{2, 0}, {0, 1}}));
  CHECK(f.B == Matrix<Rational>::from_rows({{1, 1}, {0, 1}}));
  CHECK(f.C == Matrix<Rational>::from_rows({{1, 0}, {R("2/3"), 2}}));

  const auto x = oracle::example_point();
  const auto g = build_factors(x);
  CHECK(g.C(2, 1) == x.Q()[1] * x.z()[1]);
  CHECK(g.C(1, 0) == x.Q()[0] * x.z()[0]);

  RandomSource rng(2);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      const auto p = rng.point(n);
      Rational prod = 1;
      for (const auto& v : p.z()) prod *= v;
      CHECK(oracle::leibniz_det(build_factors(p).C) == prod);
    }
}

TEST_CASE("build_lax") {
  const auto x = oracle::example_point();
  const auto l = build_lax(x);
  CHECK(l(0, 0) == 1);
  CHECK(l(1, 0) == R("-12/5"));
  CHECK(l(3, 3) == R("1/2"));
  CHECK(l == printed_lax(x));

  const auto x1 = oracle::point({"2"}, {"1/3"});
  CHECK(build_lax(x1) == Matrix<Rational>::from_rows({{R("2/3") * 2, 1}, {R("-1/3"), R("1/2")}}));

  RandomSource rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto p = rng.point(2);
    CHECK(build_lax(p) == printed_lax(p));
  }
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      const auto lax = build_lax(rng.point(n));
      CHECK(oracle::leibniz_det(lax) == 1);
      CHECK(lax.block(0, n, n) == reversal<Rational>(n));
    }
}

TEST_CASE("gamma_membership") {
  RandomSource rng(6);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 50; ++t) CHECK(gamma_membership(build_lax(rng.point(n))).in_gamma());

  const auto id = gamma_membership(Matrix<Rational>::identity(4));
  CHECK_FALSE(id.in_gamma2);

  // Mutate a forbidden zero of L^-1 (row 4, column 1 at n = 2) and invert back.
  const auto l = build_lax(oracle::example_point());
  auto inv = inverse(l);
  REQUIRE(inv(3, 0) == 0);
  inv(3, 0) += 1;
  const auto report = gamma_membership(inverse(inv));
  CHECK_FALSE(report.in_gamma1);
  REQUIRE(report.gamma1_violation.has_value());
  CHECK(report.gamma1_violation->row == 3);
  CHECK(report.gamma1_violation->col == 0);
  CHECK_THROWS_AS(gamma_membership(Matrix<Rational>(4)), SingularMatrix);
}

TEST_CASE("parameters_from_lax") {
  RandomSource rng(7);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 50; ++t) {
      const auto p = rng.point(n);
      CHECK(parameters_from_lax(build_lax(p)) == p);
    }
  const auto trivial = PhasePoint<Rational>(std::vector<Rational>(3, 1), std::vector<Rational>(3, 0));
  CHECK(parameters_from_lax(build_lax(trivial)) == trivial);
  CHECK(parameters_from_lax(build_lax(oracle::example_point())) == oracle::example_point());

  // Matrices outside the chart are rejected.
  auto bad = build_lax(oracle::example_point());
  bad(2, 2) += 1;
  CHECK_THROWS_AS(parameters_from_lax(bad), NotInGamma);

  const auto pj = point_to_json(oracle::example_point());
  CHECK(pj.dump() == R"({"Q":["1/2","1/5"],"n":2,"z":["2","3"]})");
  CHECK(std::get<PhasePoint<Rational>>(point_from_json(pj)) == oracle::example_point());
  CHECK_THROWS_AS(point_from_json(Json::parse(R"({"n":1,"z":["2"],"Q":[0.5]})")), ModeError);
  CHECK_THROWS_AS(point_from_json(Json::parse(R"({"n":2,"z":["2"],"Q":["1"]})")), IndexMismatch);
}
