#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "abstain/kernels.hpp"

namespace abstain::kernels {

// AVX2 backend: four doubles per iteration, lane j holding samples with
// index = j (mod 4), exactly like the scalar reference's accumulators.  The
// translation unit is built with -ffp-contract=off so no multiply-add pair
// is fused; every lane performs the scalar operation sequence verbatim.
PolicyEvalSums eval_avx2(const double* x, const std::uint8_t* y, std::size_t n,
                         const PolicyEvalParams& p) {
  const __m256d vt = _mm256_set1_pd(p.t);
  const __m256d vlo = _mm256_set1_pd(p.manip_lo);
  const __m256d vc = _mm256_set1_pd(p.c);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vone = _mm256_set1_pd(1.0);
  const __m256d vhalf = _mm256_set1_pd(0.5);
  const __m256d vsignbit = _mm256_set1_pd(-0.0);

  __m256d acc_loss = vzero;
  __m256d acc_mass = vzero;
  std::uint64_t count = 0;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d m_manip =
        _mm256_and_pd(_mm256_cmp_pd(vx, vlo, _CMP_GT_OQ),
                      _mm256_cmp_pd(vx, vt, _CMP_LT_OQ));
    const __m256d vreport = _mm256_blendv_pd(vx, vt, m_manip);
    const __m256d m_pred = _mm256_cmp_pd(vreport, vzero, _CMP_GE_OQ);
    const __m256d vabs = _mm256_andnot_pd(vsignbit, vreport);
    const __m256d m_acc = _mm256_cmp_pd(vabs, vt, _CMP_GE_OQ);

    std::int32_t packed;
    std::memcpy(&packed, y + i, 4);
    const __m256d vy =
        _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(_mm_cvtsi32_si128(packed)));
    const __m256d m_label1 = _mm256_cmp_pd(vy, vhalf, _CMP_GT_OQ);

    const __m256d m_wrong = _mm256_xor_pd(m_pred, m_label1);
    const __m256d vmiss = _mm256_and_pd(vone, m_wrong);
    acc_loss = _mm256_add_pd(acc_loss, _mm256_blendv_pd(vc, vmiss, m_acc));

    const __m256d m_unqualified =
        _mm256_and_pd(m_manip, _mm256_cmp_pd(vx, vzero, _CMP_LT_OQ));
    acc_mass = _mm256_add_pd(
        acc_mass, _mm256_and_pd(_mm256_sub_pd(vt, vx), m_unqualified));

    count += static_cast<std::uint64_t>(
        __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(m_manip))));
  }

  double loss[4];
  double mass[4];
  _mm256_storeu_pd(loss, acc_loss);
  _mm256_storeu_pd(mass, acc_mass);

  // Remaining samples continue the same lane assignment (i mod 4).
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
