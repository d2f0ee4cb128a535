#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toda/errors.hpp"
#include "toda/laurent.hpp"
#include "toda/scalar.hpp"

namespace toda {

// Coordinates (z_1..z_n, Q_1..Q_n) of the 2n-dimensional phase space.
// Construction checks n >= 1, matching lengths and z_i != 0.
template <class T>
class PhasePoint {
 public:
  PhasePoint(std::vector<T> z, std::vector<T> q) : z_(std::move(z)), q_(std::move(q)) {
    if (z_.empty()) throw IndexMismatch("phase point needs n >= 1");
    if (z_.size() != q_.size()) throw IndexMismatch("z and Q must have the same length");
    for (std::size_t i = 0; i < z_.size(); ++i)
      if (ScalarTraits<T>::is_zero(z_[i]))
        throw ZeroBase("z_" + std::to_string(i + 1) + " must be nonzero");
  }

  std::size_t n() const { return z_.size(); }
  const std::vector<T>& z() const { return z_; }
  const std::vector<T>& Q() const { return q_; }

  // 1-based accessors with the boundary conventions used by the flow and
  // Backlund formulas: z_0 = Q_0 = 0 and Q_{n+1} = 0; z_{n+1} = 1.
  T z_at(std::size_t i) const {
    if (i == 0) return ScalarTraits<T>::zero();
    if (i > n()) return ScalarTraits<T>::one();
    return z_[i - 1];
  }
  T q_at(std::size_t i) const {
    if (i == 0 || i > n()) return ScalarTraits<T>::zero();
    return q_[i - 1];
  }

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;

 private:
  std::vector<T> z_;
  std::vector<T> q_;
};

// The point whose coordinates are the variables themselves; feeding it to the
// generic constructions yields their symbolic form.
inline PhasePoint<LaurentPoly> symbolic_point(std::size_t n) {
  std::vector<LaurentPoly> z, q;
  for (std::size_t i = 0; i < n; ++i) {
    z.push_back(LaurentPoly::variable(n, {VarKind::z, i}));
    q.push_back(LaurentPoly::variable(n, {VarKind::Q, i}));
  }
  return PhasePoint<LaurentPoly>(std::move(z), std::move(q));
}

template <class T>
T evaluate(const LaurentPoly& p, const PhasePoint<T>& x) {
  return evaluate<T>(p, std::span<const T>(x.z()), std::span<const T>(x.Q()));
}

inline PhasePoint<double> to_double(const PhasePoint<Rational>& x) {
  std::vector<double> z, q;
  for (const auto& v : x.z()) z.push_back(v.get_d());
  for (const auto& v : x.Q()) q.push_back(v.get_d());
  return PhasePoint<double>(std::move(z), std::move(q));
}

}  // namespace toda
