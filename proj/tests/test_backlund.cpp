#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "oracles.hpp"
#include "toda/backlund.hpp"
#include "toda/canonical.hpp"
#include "toda/conserved.hpp"
#include "toda/random_points.hpp"

using namespace toda;
using oracle::R;

namespace {

// The n = 2 closed form written out with m = z2 - Q1 z1.
PhasePoint<Rational> printed_n2(const PhasePoint<Rational>& x) {
  const Rational z1 = x.z()[0], z2 = x.z()[1], q1 = x.Q()[0], q2 = x.Q()[1];
  const Rational m = z2 - q1 * z1;
  const Rational q1p = z1 * z1 / (m * m) * q1;
  const Rational q2p = m * z2 * q2;
  const Rational z1p = z1 * z2 / (m * (1 - q1p));
  const Rational z2p = (1 - q1p) / (1 - q2p) * m;
  return PhasePoint<Rational>({z1p, z2p}, {q1p, q2p});
}

}  // namespace

TEST_CASE("kr_factors at the worked point") {
  const auto x = oracle::example_point();
  const auto kr = kr_factors(x);
  REQUIRE(kr.M.size() == 1);
  CHECK(kr.M[0] == R("2/3"));
  CHECK(kr.N.empty());
  CHECK(kr.a == std::vector<Rational>{1, R("3/5")});
  CHECK(kr.K.block(0, 0, 2) == Matrix<Rational>::from_rows({{3, 1}, {3, 3}}));
  CHECK(kr.K(2, 1) == Rational(R("2/3") * R("3/5") * 3));
  CHECK(kr.K * inverse(kr.R) == build_factors(x).C);
}

TEST_CASE("kr_factors on random points") {
  RandomSource rng(71);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 50; ++t) {
      const auto x = rng.point(n);
      std::optional<KRFactors<Rational>> f;
      try {
        f = kr_factors(x);
      } catch (const DegeneratePoint&) {
        continue;
      }
      CHECK(f->K * inverse(f->R) == build_factors(x).C);
      CHECK(membership(f->K, Subset::G_minus));
      CHECK(membership(f->R, Subset::G_plus));
      CHECK(f->M.size() == n - 1);
    }
  // M_1 = 1 - Q_1 z_1 / z_2 = 0.
  CHECK_THROWS_AS(kr_factors(oracle::point({"2", "3"}, {"3/2", "1/5"})), DegeneratePoint);
}

TEST_CASE("worked point image") {
  const auto x = oracle::example_point();
  const auto y = backlund_map(x);
  CHECK(y == oracle::point({"6", "-5"}, {"1/2", "6/5"}));
  CHECK(backlund_conjugate(x) == y);
  CHECK(hamiltonian(y) == R("61/15"));
  CHECK(conserved_values(y) == conserved_values(x));
}

TEST_CASE("map and conjugation agree") {
  RandomSource rng(73);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 50; ++t) {
      const auto x = rng.point(n);
      std::optional<PhasePoint<Rational>> a;
      try {
        a = backlund_map(x);
      } catch (const DegeneratePoint&) {
        continue;
      }
      CHECK(backlund_conjugate(x) == *a);
      if (n == 2) CHECK(printed_n2(x) == *a);
    }
}

TEST_CASE("n = 1 map") {
  const auto x = oracle::point({"2"}, {"1/7"});
  const auto y = backlund_map(x);
  CHECK(y.Q()[0] == R("4/7"));
  CHECK(y.z()[0] == R("14/3"));
  CHECK(backlund_conjugate(x) == y);
}

TEST_CASE("iteration") {
  const auto x = oracle::example_point();
  const auto f0 = conserved_values(x);
  const auto seq = iterate(x, 10);
  CHECK(seq.size() == 11);
  CHECK(seq.front() == x);
  for (const auto& p : seq) CHECK(conserved_values(p) == f0);
  CHECK(iterate(x, 10, BacklundRoute::conjugate) == seq);

  const auto zero = iterate(x, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == x);

  RandomSource rng(79);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto fixed = rng.point_zero_q(n);
    CHECK(backlund_map(fixed) == fixed);
    CHECK(backlund_conjugate(fixed) == fixed);
  }
}

TEST_CASE("degenerate points") {
  // M_1 = 0.
  CHECK_THROWS_AS(backlund_map(oracle::point({"2", "3"}, {"3/2", "1/5"})), DegeneratePoint);
  // n = 1: Q+ = z^2 Q = 1.
  CHECK_THROWS_AS(backlund_map(oracle::point({"2"}, {"1/4"})), DegeneratePoint);
  try {
    iterate(oracle::point({"2"}, {"1/4"}), 3);
    FAIL("expected DegeneratePoint");
  } catch (const DegeneratePoint& e) {
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
}

TEST_CASE("flow commutation") {
  RandomSource rng(83);
  const auto x0 = to_phase(rng.canonical(2));
  CHECK(flow_commutation_check(x0, 0.0).discrepancy == 0.0);
  for (std::size_t n : {2, 3}) {
    const auto x = to_phase(rng.canonical(n));
    CHECK(flow_commutation_check(x, 0.3, 1e-4).discrepancy <= 1e-6);
  }
}
