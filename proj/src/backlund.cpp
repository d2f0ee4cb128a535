#include "toda/backlund.hpp"

#include <algorithm>
#include <cmath>

namespace toda {

FlowCommutation flow_commutation_check(const PhasePoint<double>& x, double t, double h) {
  auto a = backlund_map(integrate(x, t, h).states.back());
  auto b = integrate(backlund_map(x), t, h).states.back();
  double gap = 0.0;
  for (std::size_t i = 0; i < x.n(); ++i) {
    gap = std::max(gap, std::fabs(a.z()[i] - b.z()[i]));
    gap = std::max(gap, std::fabs(a.Q()[i] - b.Q()[i]));
  }
  return {std::move(a), std::move(b), gap};
}

}  // namespace toda
