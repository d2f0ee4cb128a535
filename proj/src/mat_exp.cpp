#include <cmath>

#include "toda/linalg.hpp"

namespace toda {

namespace {

double norm1(const Matrix<double>& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) col += std::fabs(m(i, j));
    best = std::fmax(best, col);
  }
  return best;
}

}  // namespace

Matrix<double> mat_exp(const Matrix<double>& m, double t) {
  const std::size_t d = m.dim();
  Matrix<double> a = t * m;
  const double norm = norm1(a);
  if (!std::isfinite(norm)) throw Error("mat_exp: non-finite input");

  // Scale so that ||a / 2^s|| <= 1/2; the Taylor tail is then below eps
  // after at most ~20 terms.
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  a = std::ldexp(1.0, -squarings) * a;

  Matrix<double> result = Matrix<double>::identity(d);
  Matrix<double> term = Matrix<double>::identity(d);
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * a);
    result = result + term;
    if (norm1(term) <= 1e-18 * norm1(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace toda
