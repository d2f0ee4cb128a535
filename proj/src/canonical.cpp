#include "toda/canonical.hpp"

#include <cmath>
#include <string>

namespace toda {

namespace {

// e^{alpha_k . q} for k = 0..n, with the k = 0 term identically zero.
std::vector<double> root_exponentials(const CanonicalPoint& c) {
  const std::size_t n = c.n();
  std::vector<double> a(n + 1, 0.0);
  for (std::size_t k = 1; k < n; ++k) a[k] = std::exp(c.q[k - 1] - c.q[k]);
  a[n] = std::exp(c.q[n - 1]);
  return a;
}

// d(alpha_k . q) / d q_j, k = 1..n, j = 1..n.
double root_derivative(std::size_t n, std::size_t k, std::size_t j) {
  if (k == 0) return 0.0;
  double d = (j == k) ? 1.0 : 0.0;
  if (k < n && j == k + 1) d -= 1.0;
  return d;
}

void check(const CanonicalPoint& c) {
  if (c.q.empty() || c.q.size() != c.p.size())
    throw IndexMismatch("canonical point needs n >= 1 and |q| = |p|");
}

}  // namespace

PhasePoint<double> to_phase(const CanonicalPoint& c) {
  check(c);
  const std::size_t n = c.n();
  const auto a = root_exponentials(c);
  std::vector<double> z(n), q(n);
  for (std::size_t i = 1; i <= n; ++i) {
    q[i - 1] = -a[i];
    z[i - 1] = std::exp(c.p[i - 1] + 0.5 * std::log((1.0 + a[i - 1]) / (1.0 + a[i])));
  }
  return PhasePoint<double>(std::move(z), std::move(q));
}

CanonicalPoint from_phase(const PhasePoint<double>& x) {
  const std::size_t n = x.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x.Q()[i] < 0.0))
      throw OutOfChart("from_phase: Q_" + std::to_string(i + 1) + " must be negative");
    if (!(x.z()[i] > 0.0))
      throw OutOfChart("from_phase: z_" + std::to_string(i + 1) + " must be positive");
  }
  CanonicalPoint c{std::vector<double>(n), std::vector<double>(n)};
  c.q[n - 1] = std::log(-x.Q()[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) c.q[i] = c.q[i + 1] + std::log(-x.Q()[i]);
  const auto a = root_exponentials(c);
  for (std::size_t i = 1; i <= n; ++i)
    c.p[i - 1] = std::log(x.z()[i - 1]) - 0.5 * std::log((1.0 + a[i - 1]) / (1.0 + a[i]));
  return c;
}

double hamiltonian_canonical(const CanonicalPoint& c) {
  check(c);
  const auto a = root_exponentials(c);
  double h = 0.0;
  for (std::size_t i = 1; i <= c.n(); ++i)
    h += 2.0 * std::cosh(c.p[i - 1]) * std::sqrt(1.0 + a[i - 1]) * std::sqrt(1.0 + a[i]);
  return h;
}

Matrix<double> canonical_bracket_matrix(const CanonicalPoint& c) {
  check(c);
  const std::size_t n = c.n();
  const auto a = root_exponentials(c);
  const auto x = to_phase(c);

  // jac(u, v): u over (Q_1..Q_n, z_1..z_n), v over (q_1..q_n, p_1..p_n).
  std::vector<std::vector<double>> jac(2 * n, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      jac[i - 1][j - 1] = x.Q()[i - 1] * root_derivative(n, i, j);
      const double dlogz = 0.5 * (a[i - 1] * root_derivative(n, i - 1, j) / (1.0 + a[i - 1]) -
                                  a[i] * root_derivative(n, i, j) / (1.0 + a[i]));
      jac[n + i - 1][j - 1] = x.z()[i - 1] * dlogz;
      jac[n + i - 1][n + j - 1] = i == j ? x.z()[i - 1] : 0.0;
    }

  Matrix<double> pi(2 * n);
  for (std::size_t u = 0; u < 2 * n; ++u)
    for (std::size_t v = 0; v < 2 * n; ++v) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += jac[u][k] * jac[v][n + k] - jac[u][n + k] * jac[v][k];
      pi(u, v) = s;
    }
  return pi;
}

}  // namespace toda
