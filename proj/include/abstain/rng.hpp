#pragma once

#include <cstdint>

namespace abstain::rng {

// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014).  Chosen as the project-wide generator because
// the whole state is one 64-bit word, the output function is a fixed
// sequence of shifts and multiplies (so streams are reproducible from the
// seed alone, independent of platform or library version), and disjoint
// substreams are cheap to derive.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1): top 53 bits of the output word.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in the open interval (0, 1): 52-bit grid offset by half a
  // step.  Used where a draw must stay away from both endpoints (e.g. before
  // an inverse-CDF transform, which is infinite at 0 and 1).
  double next_open_unit() {
    return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
  }

 private:
  std::uint64_t state_;
};

// Deterministic seed for substream `index` of a master seed.  Each row of a
// sweep (and each generated random instance) gets its own substream so that
// adding or reordering rows never perturbs the draws of the others.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  return g.next();
}

// Inverse of the standard normal CDF (Wichura's PPND16, algorithm AS 241).
// Accurate to ~1e-16 relative over (0, 1); used to turn uniform draws into
// normal deviates so that the sampled stream is a pure function of the seed.
double inverse_normal_cdf(double p);

}  // namespace abstain::rng
