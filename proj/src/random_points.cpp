#include "toda/random_points.hpp"

namespace toda {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t x = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int RandomSource::small_nonzero() {
  std::uniform_int_distribution<int> d(0, 17);
  const int v = d(engine_) - 9;
  return v >= 0 ? v + 1 : v;
}

Rational RandomSource::rational() {
  const int p = small_nonzero();
  const int q = small_nonzero();
  Rational r(p, q);
  r.canonicalize();
  return r;
}

double RandomSource::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

PhasePoint<Rational> RandomSource::point(std::size_t n) {
  std::vector<Rational> z, q;
  for (std::size_t i = 0; i < n; ++i) z.push_back(rational());
  for (std::size_t i = 0; i < n; ++i) q.push_back(rational());
  return PhasePoint<Rational>(std::move(z), std::move(q));
}

PhasePoint<Rational> RandomSource::point_zero_q(std::size_t n) {
  std::vector<Rational> z;
  for (std::size_t i = 0; i < n; ++i) z.push_back(rational());
  return PhasePoint<Rational>(std::move(z), std::vector<Rational>(n, Rational(0)));
}

Matrix<Rational> RandomSource::matrix(std::size_t dim) {
  Matrix<Rational> m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rational();
  return m;
}

CanonicalPoint RandomSource::canonical(std::size_t n, double scale) {
  CanonicalPoint c{std::vector<double>(n), std::vector<double>(n)};
  for (auto& v : c.q) v = uniform(-scale, scale);
  for (auto& v : c.p) v = uniform(-scale, scale);
  return c;
}

}  // namespace toda
