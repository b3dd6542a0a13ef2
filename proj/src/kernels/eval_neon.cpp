#include <arm_neon.h>

#include <cmath>

#include "abstain/kernels.hpp"

namespace abstain::kernels {

namespace {

struct LanePair {
  float64x2_t loss;
  float64x2_t mass;
};

// One two-lane step of the kernel; mask arithmetic mirrors the scalar
// reference exactly (bitwise select of the same constants, same subtraction).
inline void step2(const double* x, const std::uint8_t* y, std::size_t i,
                  float64x2_t vt, float64x2_t vlo, float64x2_t vc,
                  float64x2_t vzero, float64x2_t vone, LanePair& acc,
                  std::uint64_t& count) {
  const float64x2_t vx = vld1q_f64(x + i);
  const uint64x2_t m_manip =
      vandq_u64(vcgtq_f64(vx, vlo), vcltq_f64(vx, vt));
  const float64x2_t vreport = vbslq_f64(m_manip, vt, vx);
  const uint64x2_t m_pred = vcgeq_f64(vreport, vzero);
  const uint64x2_t m_acc = vcgeq_f64(vabsq_f64(vreport), vt);

  const std::uint64_t labels[2] = {y[i] ? ~0ull : 0ull, y[i + 1] ? ~0ull : 0ull};
  const uint64x2_t m_label1 = vld1q_u64(labels);

  const uint64x2_t m_wrong = veorq_u64(m_pred, m_label1);
  const float64x2_t vmiss =
      vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(vone), m_wrong));
  acc.loss = vaddq_f64(acc.loss, vbslq_f64(m_acc, vmiss, vc));

  const uint64x2_t m_unqualified = vandq_u64(m_manip, vcltq_f64(vx, vzero));
  const float64x2_t vmm = vreinterpretq_f64_u64(vandq_u64(
      vreinterpretq_u64_f64(vsubq_f64(vt, vx)), m_unqualified));
  acc.mass = vaddq_f64(acc.mass, vmm);

  count += (vgetq_lane_u64(m_manip, 0) ? 1u : 0u) +
           (vgetq_lane_u64(m_manip, 1) ? 1u : 0u);
}

}  // namespace

// NEON backend: blocks of four samples as two 2-lane vectors, the first
// holding lanes {0, 1} and the second lanes {2, 3} of the reference's
// four-lane accumulation tree.
PolicyEvalSums eval_neon(const double* x, const std::uint8_t* y, std::size_t n,
                         const PolicyEvalParams& p) {
  const float64x2_t vt = vdupq_n_f64(p.t);
  const float64x2_t vlo = vdupq_n_f64(p.manip_lo);
  const float64x2_t vc = vdupq_n_f64(p.c);
  const float64x2_t vzero = vdupq_n_f64(0.0);
  const float64x2_t vone = vdupq_n_f64(1.0);

  LanePair acc01{vzero, vzero};
  LanePair acc23{vzero, vzero};
  std::uint64_t count = 0;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    step2(x, y, i, vt, vlo, vc, vzero, vone, acc01, count);
    step2(x, y, i + 2, vt, vlo, vc, vzero, vone, acc23, count);
  }

  double loss[4] = {vgetq_lane_f64(acc01.loss, 0), vgetq_lane_f64(acc01.loss, 1),
                    vgetq_lane_f64(acc23.loss, 0), vgetq_lane_f64(acc23.loss, 1)};
  double mass[4] = {vgetq_lane_f64(acc01.mass, 0), vgetq_lane_f64(acc01.mass, 1),
                    vgetq_lane_f64(acc23.mass, 0), vgetq_lane_f64(acc23.mass, 1)};

  for (; i < n; ++i) {
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
