#include <cmath>

#include "abstain/kernels.hpp"

namespace abstain::kernels {

// Reference backend.  The four-lane accumulators and the (l0+l1)+(l2+l3)
// reduction define the arithmetic every SIMD variant must reproduce bit for
// bit; the case study uses unit misclassification weights, so a wrong
// accepted prediction costs exactly 1.
PolicyEvalSums eval_scalar(const double* x, const std::uint8_t* y,
                           std::size_t n, const PolicyEvalParams& p) {
  double loss[4] = {0.0, 0.0, 0.0, 0.0};
  double mass[4] = {0.0, 0.0, 0.0, 0.0};
  std::uint64_t count = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const bool manip = (xi > p.manip_lo) && (xi < p.t);
    const double report = manip ? p.t : xi;
    const bool predicted = report >= 0.0;
    const bool accepted = std::abs(report) >= p.t;
    const bool label = y[i] != 0;
    loss[i & 3] += accepted ? ((predicted == label) ? 0.0 : 1.0) : p.c;
    mass[i & 3] += (manip && xi < 0.0) ? (p.t - xi) : 0.0;
    count += manip ? 1u : 0u;
  }

  return PolicyEvalSums{(loss[0] + loss[1]) + (loss[2] + loss[3]),
                        (mass[0] + mass[1]) + (mass[2] + mass[3]), count};
}

}  // namespace abstain::kernels
