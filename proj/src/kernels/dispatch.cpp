#include <stdexcept>

#include "abstain/kernels.hpp"

namespace abstain::kernels {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

namespace {

Backend detect() {
#if defined(ABSTAIN_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
#if defined(ABSTAIN_HAVE_NEON)
  return Backend::neon;
#endif
  return Backend::scalar;
}

}  // namespace

Backend active_backend() {
  static const Backend chosen = detect();
  return chosen;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> v{Backend::scalar};
#if defined(ABSTAIN_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) v.push_back(Backend::avx2);
#endif
#if defined(ABSTAIN_HAVE_NEON)
  v.push_back(Backend::neon);
#endif
  return v;
}

PolicyEvalSums evaluate_with(Backend b, const double* x, const std::uint8_t* y,
                             std::size_t n, const PolicyEvalParams& p) {
  switch (b) {
    case Backend::scalar:
      return eval_scalar(x, y, n, p);
    case Backend::avx2:
#if defined(ABSTAIN_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return eval_avx2(x, y, n, p);
#endif
      throw std::invalid_argument("avx2 backend not available on this machine");
    case Backend::neon:
#if defined(ABSTAIN_HAVE_NEON)
      return eval_neon(x, y, n, p);
#else
      throw std::invalid_argument("neon backend not available on this machine");
#endif
  }
  throw std::invalid_argument("unknown kernel backend");
}

PolicyEvalSums evaluate(const double* x, const std::uint8_t* y, std::size_t n,
                        const PolicyEvalParams& p) {
  return evaluate_with(active_backend(), x, y, n, p);
}

}  // namespace abstain::kernels
