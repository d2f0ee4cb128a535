#pragma once

#include <vector>

#include "toda/matrix.hpp"
#include "toda/phase_point.hpp"

namespace toda {

// Canonical coordinates (q, p) with {q_i, p_j} = delta_ij. Conventions:
// q_0 = -infinity (so e^{q_0 - q_1} is exactly 0) and q_{n+1} = 0.
struct CanonicalPoint {
  std::vector<double> q;
  std::vector<double> p;

  std::size_t n() const { return q.size(); }
};

// Q_i = -e^{q_i - q_{i+1}} (i < n), Q_n = -e^{q_n},
// z_i = e^{p_i} sqrt((1 + e^{q_{i-1} - q_i}) / (1 + e^{q_i - q_{i+1}})).
PhasePoint<double> to_phase(const CanonicalPoint& c);

// Inverse of to_phase; OutOfChart unless every Q_i < 0 and z_i > 0.
CanonicalPoint from_phase(const PhasePoint<double>& x);

// H = 2 sum_i cosh(p_i) sqrt(1 + e^{alpha_{i-1}.q}) sqrt(1 + e^{alpha_i.q})
// with the B_n simple roots alpha_i = e_i - e_{i+1}, alpha_n = e_n.
double hamiltonian_canonical(const CanonicalPoint& c);

// Bracket {u_a, u_b} on u = (Q, z) induced by the canonical bracket through
// the analytic Jacobian of to_phase.
Matrix<double> canonical_bracket_matrix(const CanonicalPoint& c);

}  // namespace toda
