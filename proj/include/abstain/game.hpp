#pragma once

#include <cmath>
#include <stdexcept>

namespace abstain {

// Misclassification weights l(prediction, label).  l01 is the cost of
// predicting 0 on a true 1, l10 the cost of predicting 1 on a true 0.
// The one-dimensional case study uses unit weights throughout.
struct LossSpec {
  double l01 = 1.0;
  double l10 = 1.0;
};

inline void validate(const LossSpec& s) {
  if (!(s.l01 >= 0.0) || !(s.l01 <= 1.0) || !(s.l10 >= 0.0) || !(s.l10 <= 1.0))
    throw std::invalid_argument("loss weights must lie in [0, 1]");
}

// Cost scale K = 1/sqrt(gamma): the largest distance an agent will ever move,
// since moving d costs gamma*d^2 and the prize for acceptance is at most 1.
inline double k_of_gamma(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return 1.0 / std::sqrt(gamma);
}

// Parameters of the one-dimensional game: features x ~ Uniform[lo, hi],
// label y = 1{x + noise >= 0} with noise ~ N(0, sigma^2), quadratic
// manipulation cost gamma, abstention cost c.
class GameConfig {
 public:
  GameConfig(double gamma, double c, double sigma = 0.0,
             double domain_lo = -2.0, double domain_hi = 2.0)
      : gamma_(gamma), c_(c), sigma_(sigma),
        domain_lo_(domain_lo), domain_hi_(domain_hi),
        k_(k_of_gamma(gamma)) {
    if (!(c >= 0.0) || !(c <= 1.0))
      throw std::invalid_argument("abstention cost c must lie in [0, 1]");
    if (!(sigma >= 0.0))
      throw std::invalid_argument("label noise sigma must be nonnegative");
    if (!(domain_lo < domain_hi))
      throw std::invalid_argument("feature domain must be a nonempty interval");
  }

  double gamma() const { return gamma_; }
  double c() const { return c_; }
  double sigma() const { return sigma_; }
  double domain_lo() const { return domain_lo_; }
  double domain_hi() const { return domain_hi_; }
  double k() const { return k_; }

  GameConfig with_gamma(double g) const {
    return GameConfig(g, c_, sigma_, domain_lo_, domain_hi_);
  }
  GameConfig with_c(double c) const {
    return GameConfig(gamma_, c, sigma_, domain_lo_, domain_hi_);
  }
  GameConfig with_sigma(double s) const {
    return GameConfig(gamma_, c_, s, domain_lo_, domain_hi_);
  }

 private:
  double gamma_, c_, sigma_, domain_lo_, domain_hi_, k_;
};

// The principal's committed pair: the fixed sign classifier f(x) = 1{x >= 0}
// and the symmetric abstention band of half-width t (reject reports with
// |x| < t, act on the rest).
class ThresholdPolicy {
 public:
  explicit ThresholdPolicy(double t) : t_(t) {
    if (!(t >= 0.0)) throw std::invalid_argument("threshold must be nonnegative");
  }
  double t() const { return t_; }
  bool predict(double x) const { return x >= 0.0; }
  bool accept(double x) const { return std::abs(x) >= t_; }

 private:
  double t_;
};

// Principal's realized loss for one interaction: c when the report was
// rejected, the misclassification weight when acted on and wrong, else 0.
inline double pointwise_loss(bool prediction, bool label, bool accepted,
                             const LossSpec& spec, double c) {
  if (!accepted) return c;
  if (prediction == label) return 0.0;
  return prediction ? spec.l10 : spec.l01;
}

inline void require_case_study_domain(const GameConfig& cfg) {
  if (cfg.domain_lo() != -2.0 || cfg.domain_hi() != 2.0)
    throw std::domain_error(
        "closed forms are derived for the Uniform[-2, 2] feature domain");
}

}  // namespace abstain
