#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Inner loop of the simulation: fold a sampled population through the
// committed policy and the agents' best responses, accumulating the loss and
// manipulation statistics.  A scalar reference implementation defines the
// exact arithmetic; SIMD variants (AVX2 on x86-64, NEON on aarch64) are
// selected at runtime and are bit-identical to it, which every build
// enforces by test.
//
// Bit-identity across lane widths is achieved by fixing the reduction shape:
// all backends accumulate into four lanes (sample i into lane i mod 4) and
// reduce as (l0 + l1) + (l2 + l3).  No FMA contraction is permitted in any
// backend.
namespace abstain::kernels {

struct PolicyEvalParams {
  double t = 0.0;         // abstention band half-width
  double manip_lo = 0.0;  // lower edge of the moving interval; +inf disables
                          // manipulation (non-strategic evaluation)
  double c = 0.0;         // abstention cost
};

struct PolicyEvalSums {
  double loss_sum = 0.0;        // sum of per-sample losses
  double manip_mass_sum = 0.0;  // sum of (t - x) over manipulating x < 0
  std::uint64_t manip_count = 0;

  bool operator==(const PolicyEvalSums&) const = default;
};

enum class Backend { scalar, avx2, neon };

const char* to_string(Backend b);

// Backend chosen for this process (CPU feature detection, done once).
Backend active_backend();

// All backends this binary can run on this machine, scalar first.
std::vector<Backend> available_backends();

// Evaluate with the process-wide backend.
PolicyEvalSums evaluate(const double* x, const std::uint8_t* y, std::size_t n,
                        const PolicyEvalParams& p);

// Evaluate with an explicit backend (equivalence tests); throws
// std::invalid_argument if it is not available on this machine.
PolicyEvalSums evaluate_with(Backend b, const double* x, const std::uint8_t* y,
                             std::size_t n, const PolicyEvalParams& p);

PolicyEvalSums eval_scalar(const double* x, const std::uint8_t* y,
                           std::size_t n, const PolicyEvalParams& p);
#if defined(ABSTAIN_HAVE_AVX2)
PolicyEvalSums eval_avx2(const double* x, const std::uint8_t* y, std::size_t n,
                         const PolicyEvalParams& p);
#endif
#if defined(ABSTAIN_HAVE_NEON)
PolicyEvalSums eval_neon(const double* x, const std::uint8_t* y, std::size_t n,
                         const PolicyEvalParams& p);
#endif

}  // namespace abstain::kernels
