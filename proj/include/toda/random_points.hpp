#pragma once

#include <cstdint>
#include <random>

#include "toda/canonical.hpp"
#include "toda/matrix.hpp"
#include "toda/phase_point.hpp"

namespace toda {

// splitmix64 step; derives independent stream seeds from one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Seeded sampler for the randomized checks. Rationals are p/q with p, q drawn
// uniformly from [-9, 9] \ {0}.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  Rational rational();
  double uniform(double lo, double hi);

  PhasePoint<Rational> point(std::size_t n);
  // Random z with every Q_i = 0.
  PhasePoint<Rational> point_zero_q(std::size_t n);
  Matrix<Rational> matrix(std::size_t dim);
  // q_i, p_i uniform in [-scale, scale].
  CanonicalPoint canonical(std::size_t n, double scale = 1.0);

  std::mt19937_64& engine() { return engine_; }

 private:
  int small_nonzero();

  std::mt19937_64 engine_;
};

}  // namespace toda
