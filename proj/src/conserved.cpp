#include "toda/conserved.hpp"

namespace toda {

IntervalShape interval_shape(std::size_t n, std::size_t x, std::size_t y) {
  if (x < 1 || y < x || y > 2 * n) return IntervalShape::none;
  if (x <= n) {
    const std::size_t k = x;
    if (y == k) return IntervalShape::z_single;
    if (k < n && y == k + 1) return IntervalShape::z_step;
    if (y == bar(n, k)) return IntervalShape::cross;
    if (k < n && y == bar(n, k + 1)) return IntervalShape::cross_shifted;
    return IntervalShape::none;
  }
  const std::size_t k = bar(n, x);
  if (y == x) return IntervalShape::zinv_single;
  if (k >= 2 && y == bar(n, k - 1)) return IntervalShape::zinv_step;
  return IntervalShape::none;
}

LaurentPoly interval_weight(std::size_t n, std::size_t x, std::size_t y) {
  return interval_weight(symbolic_point(n), x, y).with_index_bound(n);
}

bool chain_admissible(std::size_t n, const IntervalChain& chain, ChainMode mode) {
  for (std::size_t l = 0; l < chain.size(); ++l) {
    const auto [x, y] = chain[l];
    const IntervalShape s = interval_shape(n, x, y);
    if (s == IntervalShape::none) return false;
    if (l > 0 && chain[l - 1].y >= x) return false;
    if (mode == ChainMode::improved) {
      if (s == IntervalShape::cross && x < n) return false;
      if (s == IntervalShape::cross_shifted &&
          (l + 1 == chain.size() || chain[l + 1].x != bar(n, x)))
        return false;
    }
  }
  return true;
}

std::vector<IntervalChain> enumerate_chains(std::size_t n, std::size_t i, ChainMode mode) {
  std::vector<IntervalChain> out;
  IntervalChain cur;
  auto dfs = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == i) {
      if (chain_admissible(n, cur, mode)) out.push_back(cur);
      return;
    }
    for (std::size_t x = start; x <= 2 * n; ++x)
      for (std::size_t y = x; y <= 2 * n; ++y) {
        if (interval_shape(n, x, y) == IntervalShape::none) continue;
        cur.push_back({x, y});
        self(self, y + 1);
        cur.pop_back();
      }
  };
  dfs(dfs, 1);
  return out;
}

LaurentPoly f_poly(std::size_t n, std::size_t i, ChainMode mode) {
  if (i > 2 * n) throw IndexMismatch("f_poly: i must lie in 0..2n");
  return path_sum(symbolic_point(n), i, mode).with_index_bound(n);
}

AppendixReport appendix_oracle(const PhasePoint<Rational>& x) {
  const std::size_t n = x.n();
  const std::size_t d = 2 * n;
  for (std::size_t i = 1; i <= n; ++i)
    if (sgn(x.q_at(i)) == 0)
      throw DegeneratePoint("appendix_oracle: requires every Q_i != 0 (D is singular)");

  auto head_q = [&](std::size_t i) {
    Rational p(1);
    for (std::size_t j = 1; j <= i; ++j) p *= x.q_at(j);
    return p;
  };
  auto head_z = [&](std::size_t i) {
    Rational p(1);
    for (std::size_t j = 1; j <= i; ++j) p *= x.z_at(j);
    return p;
  };

  std::vector<Rational> dd, zz;
  for (std::size_t i = 1; i <= n; ++i) dd.push_back(head_q(i - 1) * head_z(i - 1));
  for (std::size_t i = 1; i <= n; ++i) dd.push_back(head_q(n) * head_z(n - i));
  for (std::size_t i = 0; i < n; ++i) zz.push_back(Rational(1));
  for (std::size_t i = 0; i < n; ++i) zz.push_back(x.z_at(n - i));
  const Matrix<Rational> big_d = diagonal(dd);
  const Matrix<Rational> big_z = diagonal(zz);
  const Matrix<Rational> d_inv = inverse(big_d);
  Matrix<Rational> lambda = Matrix<Rational>::identity(d);
  for (std::size_t k = 0; k + 1 < d; ++k) lambda(k + 1, k) = 1;

  const auto f = build_factors(x);
  AppendixReport rep;
  rep.c_factorization = f.C == big_z * big_d * lambda * d_inv;

  const Matrix<Rational> m = d_inv * inverse(big_z) * f.N * f.B * big_d;

  std::vector<Rational> outer;
  for (std::size_t i = 1; i <= n; ++i) outer.push_back(x.z_at(i));
  for (std::size_t i = 1; i <= n; ++i) outer.push_back(Rational(1) / x.z_at(n + 1 - i));
  Matrix<Rational> bidiag = Matrix<Rational>::identity(d);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    bidiag(k, k + 1) = x.q_at(k + 1);
    bidiag(n + k, n + k + 1) = x.q_at(n - 1 - k);
  }
  Matrix<Rational> tail_block = Matrix<Rational>::identity(d);
  for (std::size_t k = 1; k <= n; ++k) {
    Rational t(1);
    for (std::size_t j = k; j <= n; ++j) t *= x.q_at(j);
    tail_block(k - 1, d - k) = t;
  }
  rep.m_three_factor = m == diagonal(outer) * bidiag * tail_block;

  rep.m_entry_law = true;
  for (std::size_t p = 1; p <= d && rep.m_entry_law; ++p)
    for (std::size_t q = 1; q <= d; ++q) {
      Rational expected(0);
      if (p <= q) {
        expected = interval_weight(x, p, q);
        if ((q - p) % 2 == 1) expected = -expected;
      }
      if (m(p - 1, q - 1) != expected) {
        rep.m_entry_law = false;
        break;
      }
    }

  // Two polynomials of degree 2n that agree at 2n + 1 points coincide.
  const auto cp = char_poly(build_lax(x));
  rep.charpoly_match = true;
  for (std::size_t s = 0; s <= d; ++s) {
    const Rational lam(static_cast<long>(s));
    if (determinant(lam * lambda - m) != cp.evaluate(lam)) {
      rep.charpoly_match = false;
      break;
    }
  }
  return rep;
}

}  // namespace toda
