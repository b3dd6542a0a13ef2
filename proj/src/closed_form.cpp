#include "abstain/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace abstain::closed_form {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_threshold(double t) {
  require_finite(t, "threshold");
  if (!(t >= 0.0)) throw std::invalid_argument("threshold must be nonnegative");
}

void require_band_in_domain(double t) {
  require_threshold(t);
  if (!(t <= 2.0))
    throw std::invalid_argument("band half-width must lie in [0, 2]");
}

void require_noiseless(const GameConfig& cfg) {
  if (cfg.sigma() != 0.0)
    throw std::domain_error("closed forms assume noiseless labels (sigma = 0)");
}

double utility(double report, double x, double t, const GameConfig& cfg) {
  const bool predicted = report >= 0.0;
  const bool accepted = std::abs(report) >= t;
  const double gain = (predicted && accepted) ? 1.0 : 0.0;
  const double move = report - x;
  return gain - cfg.gamma() * move * move;
}

}  // namespace

BestResponse best_response(double x, double t, const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_threshold(t);
  require_finite(x, "feature");
  if (!(x >= cfg.domain_lo() && x <= cfg.domain_hi()))
    throw std::domain_error("feature outside the [-2, 2] domain");

  // Moving to the band edge pays iff the quadratic cost stays below the unit
  // prize: x > t - K strictly (indifference at t - K resolves to honesty).
  // The domain clamp max(-2, t - K) belongs to the loss integrals, not here:
  // when t - K < -2 even the leftmost agent strictly profits from moving.
  const bool moves = (x > t - cfg.k()) && (x < t);
  const double report = moves ? t : x;
  return BestResponse{report, moves, utility(report, x, t, cfg)};
}

BestResponse best_response_no_abstention(double x, const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_finite(x, "feature");
  if (!(x >= cfg.domain_lo() && x <= cfg.domain_hi()))
    throw std::domain_error("feature outside the [-2, 2] domain");

  const bool moves = (x >= -cfg.k()) && (x < 0.0);
  const double report = moves ? 0.0 : x;
  const double gain = (report >= 0.0) ? 1.0 : 0.0;
  const double move = report - x;
  return BestResponse{report, moves, gain - cfg.gamma() * move * move};
}

double analytic_loss(double t, const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_noiseless(cfg);
  require_band_in_domain(t);

  const double a = std::max(-2.0, t - cfg.k());
  return 0.25 * (cfg.c() * std::max(0.0, t + a) + std::max(0.0, -a));
}

OptimalThreshold optimal_threshold(const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_noiseless(cfg);

  const double k = cfg.k();
  const double c = cfg.c();
  OptimalThreshold opt;
  if (k > 4.0) {
    // Even t = 0 cannot stop the farthest unqualified agents, and every
    // band leaks the same mass: the loss is flat at 1/2 on [0, 2].
    opt.lo = 0.0;
    opt.hi = 2.0;
  } else if (c == 0.0) {
    // Free abstention: once the band is wide enough to price every
    // unqualified agent out of gaming, widening it further costs nothing.
    opt.lo = std::min(k, 2.0);
    opt.hi = 2.0;
  } else if (c < 0.5) {
    opt.lo = opt.hi = std::min(k, 2.0);
  } else if (c == 0.5) {
    opt.lo = k / 2.0;
    opt.hi = std::min(k, 2.0);
  } else {
    opt.lo = opt.hi = k / 2.0;
  }
  opt.canonical = opt.lo;
  opt.loss = analytic_loss(opt.canonical, cfg);
  return opt;
}

double no_abstention_loss(const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_noiseless(cfg);
  const double k = cfg.k();
  return (k <= 2.0) ? k / 4.0 : 0.5;
}

const char* to_string(ManipulationRegime r) {
  switch (r) {
    case ManipulationRegime::low_k_low_c: return "low_k_low_c";
    case ManipulationRegime::low_k_high_c: return "low_k_high_c";
    case ManipulationRegime::mid_k_low_c: return "mid_k_low_c";
    case ManipulationRegime::mid_k_high_c: return "mid_k_high_c";
    case ManipulationRegime::high_k: return "high_k";
  }
  return "?";
}

namespace {

ManipulationRegime classify_regime(double k, double c) {
  if (k > 4.0) return ManipulationRegime::high_k;
  if (c < 0.5)
    return (k <= 2.0) ? ManipulationRegime::low_k_low_c
                      : ManipulationRegime::mid_k_low_c;
  return (k <= 2.0) ? ManipulationRegime::low_k_high_c
                    : ManipulationRegime::mid_k_high_c;
}

}  // namespace

ManipulationReport expected_manipulation_no_abstention(const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_noiseless(cfg);
  const double k = cfg.k();
  const double mass = (k <= 2.0) ? k * k / 8.0 : 0.5;
  return ManipulationReport{mass, classify_regime(k, cfg.c())};
}

ManipulationReport expected_manipulation_with_abstention(
    const GameConfig& cfg, std::optional<double> t_choice) {
  require_case_study_domain(cfg);
  require_noiseless(cfg);
  const double k = cfg.k();
  const double c = cfg.c();
  const ManipulationRegime regime = classify_regime(k, c);

  double mass = 0.0;
  switch (regime) {
    case ManipulationRegime::low_k_low_c:
      mass = 0.0;  // the band at K puts acceptance out of everyone's reach
      break;
    case ManipulationRegime::mid_k_low_c:
      mass = k * k / 8.0 - 0.5;  // band clipped at 2; reach (k - 2, 0] leaks
      break;
    case ManipulationRegime::low_k_high_c:
    case ManipulationRegime::mid_k_high_c:
      mass = 3.0 * k * k / 32.0;  // band at K/2, reach (-K/2, 0]
      break;
    case ManipulationRegime::high_k: {
      if (!t_choice.has_value())
        throw std::invalid_argument(
            "K > 4: every band in [0, 2] is optimal, pass the chosen one");
      const double t = *t_choice;
      require_band_in_domain(t);
      mass = t / 2.0 + 0.5;  // all of [-2, 0) flees to the chosen band edge
      break;
    }
  }
  return ManipulationReport{mass, regime};
}

const char* to_string(ManipulationOrdering o) {
  switch (o) {
    case ManipulationOrdering::abstention_lower: return "abstention_lower";
    case ManipulationOrdering::equal: return "equal";
    case ManipulationOrdering::abstention_higher: return "abstention_higher";
  }
  return "?";
}

ManipulationOrdering manipulation_comparison(const GameConfig& cfg,
                                             std::optional<double> t_choice) {
  const double with = expected_manipulation_with_abstention(cfg, t_choice)
                          .expected_distance;
  const double without =
      expected_manipulation_no_abstention(cfg).expected_distance;
  const double diff = with - without;
  if (std::abs(diff) <= 1e-12) return ManipulationOrdering::equal;
  return diff < 0.0 ? ManipulationOrdering::abstention_lower
                    : ManipulationOrdering::abstention_higher;
}

double analytic_nonstrategic_loss(double t, const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_noiseless(cfg);
  require_band_in_domain(t);
  return cfg.c() * t / 2.0;
}

double analytic_manip_fraction(double t, const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_band_in_domain(t);
  const double a = std::max(-2.0, t - cfg.k());
  return (t - a) / 4.0;
}

double analytic_manip_mass_unqualified(double t, const GameConfig& cfg) {
  require_case_study_domain(cfg);
  require_band_in_domain(t);
  const double a = std::max(-2.0, t - cfg.k());
  if (a >= 0.0) return 0.0;
  // (1/4) * integral over (a, 0) of (t - x) dx
  return 0.25 * (t * -a + a * a / 2.0);
}

}  // namespace abstain::closed_form
