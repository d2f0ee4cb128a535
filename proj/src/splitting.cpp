#include "toda/splitting.hpp"

#include <vector>

namespace toda {

namespace {

std::size_t rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t subalgebra_dimension(std::size_t n, Subset which) {
  const std::size_t d = 2 * n;
  std::vector<std::vector<Rational>> images;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix<Rational> unit(d);
      unit(i, j) = 1;
      const auto split = project(unit);
      const Matrix<Rational>& part =
          (which == Subset::g_plus || which == Subset::G_plus) ? split.plus : split.minus;
      std::vector<Rational> flat;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) flat.push_back(part(a, b));
      images.push_back(std::move(flat));
    }
  return rank(std::move(images));
}

}  // namespace toda
