#include "abstain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace abstain::oracle {

namespace {

constexpr double kTieTol = 1e-12;

void require_index(const DiscreteInstance& inst, std::size_t i) {
  if (i >= inst.size()) throw std::invalid_argument("point index out of range");
}

void require_policy_size(const DiscreteInstance& inst, const BitVector& v,
                         const char* what) {
  if (v.size() != inst.size())
    throw std::invalid_argument(std::string(what) +
                                " must have one entry per point");
}

// Agent i's best report given the accepted-positive structure of (f, r),
// reading policies as raw arrays so the exhaustive search can reuse it
// without materializing vectors.
std::size_t best_response_raw(const DiscreteInstance& inst, std::size_t i,
                              const std::uint8_t* f, const std::uint8_t* r) {
  const std::size_t n = inst.size();
  std::size_t best = i;
  double best_u = (f[i] && r[i]) ? 1.0 : 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const double gain = (f[j] && r[j]) ? 1.0 : 0.0;
    const double u = gain - inst.gamma * inst.d(i, j);
    if (u > best_u) {
      best = j;
      best_u = u;
    } else if (u == best_u && best != i) {
      // Truthful reporting wins ties outright; among equal non-truthful
      // candidates prefer the cheaper move, then the smaller index.
      if (inst.d(i, j) < inst.d(i, best)) best = j;
    }
  }
  return best;
}

double loss_raw(const DiscreteInstance& inst, const std::uint8_t* f,
                const std::uint8_t* r) {
  const std::size_t n = inst.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b = best_response_raw(inst, i, f, r);
    double contribution;
    if (!r[b]) {
      contribution = inst.c;
    } else if (f[b]) {
      // Acting as positive; the agent's true label follows its own
      // posterior, which travels with it.
      contribution = inst.loss.l10 * (1.0 - inst.posterior[i]);
    } else {
      contribution = inst.loss.l01 * inst.posterior[i];
    }
    total += inst.prior[i] * contribution;
  }
  return total;
}

}  // namespace

std::string to_string(const BitVector& v) {
  std::string s;
  s.reserve(v.size());
  for (std::uint8_t b : v) s.push_back(b ? '1' : '0');
  return s;
}

void validate(const DiscreteInstance& inst) {
  const std::size_t n = inst.size();
  if (n == 0) throw std::invalid_argument("instance must have at least one point");
  if (inst.posterior.size() != n || inst.labels_f.size() != n)
    throw std::invalid_argument("prior, posterior and labels_f must agree in length");
  if (inst.dist.size() != n * n)
    throw std::invalid_argument("dist must be an n-by-n matrix");

  double total = 0.0;
  for (double p : inst.prior) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("prior weights must be strictly positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("prior must sum to 1");

  for (double q : inst.posterior)
    if (!(q >= 0.0) || !(q <= 1.0))
      throw std::invalid_argument("posteriors must lie in [0, 1]");
  for (std::uint8_t b : inst.labels_f)
    if (b > 1) throw std::invalid_argument("labels_f entries must be 0 or 1");

  for (std::size_t i = 0; i < n; ++i) {
    if (inst.d(i, i) != 0.0)
      throw std::invalid_argument("dist must have a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = inst.d(i, j);
      if (!(d >= 0.0) || !std::isfinite(d))
        throw std::invalid_argument("distances must be finite and nonnegative");
      if (d != inst.d(j, i))
        throw std::invalid_argument("dist must be symmetric");
    }
  }

  if (!(inst.gamma > 0.0) || !std::isfinite(inst.gamma))
    throw std::invalid_argument("gamma must be positive");
  if (!(inst.c >= 0.0) || !(inst.c <= 1.0))
    throw std::invalid_argument("abstention cost c must lie in [0, 1]");
  abstain::validate(inst.loss);
}

double conditional_loss(const DiscreteInstance& inst, std::size_t i) {
  require_index(inst, i);
  return inst.labels_f[i] ? inst.loss.l10 * (1.0 - inst.posterior[i])
                          : inst.loss.l01 * inst.posterior[i];
}

BitVector unconstrained_abstention(const DiscreteInstance& inst) {
  validate(inst);
  BitVector r(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    r[i] = conditional_loss(inst, i) <= inst.c ? 1 : 0;  // accept on the tie
  return r;
}

std::size_t discrete_best_response(const DiscreteInstance& inst, std::size_t i,
                                   const BitVector& f, const BitVector& r) {
  validate(inst);
  require_index(inst, i);
  require_policy_size(inst, f, "classifier f");
  require_policy_size(inst, r, "abstention r");
  return best_response_raw(inst, i, f.data(), r.data());
}

double post_response_loss(const DiscreteInstance& inst, const BitVector& f,
                          const BitVector& r) {
  validate(inst);
  require_policy_size(inst, f, "classifier f");
  require_policy_size(inst, r, "abstention r");
  return loss_raw(inst, f.data(), r.data());
}

EnumerationResult optimal_constrained_abstention(const DiscreteInstance& inst) {
  validate(inst);
  const std::size_t n = inst.size();
  if (n > 16)
    throw std::invalid_argument(
        "exhaustive search over 2^n abstention vectors requires n <= 16");

  const std::uint32_t limit = 1u << n;
  std::vector<double> losses(limit);
  BitVector r(n);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    for (std::size_t j = 0; j < n; ++j) r[j] = (mask >> j) & 1u;
    losses[mask] = loss_raw(inst, inst.labels_f.data(), r.data());
    best = std::min(best, losses[mask]);
  }

  EnumerationResult result;
  result.loss = best;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (losses[mask] <= best + kTieTol) {
      for (std::size_t j = 0; j < n; ++j) r[j] = (mask >> j) & 1u;
      result.minimizers.push_back(r);
    }
  }
  std::sort(result.minimizers.begin(), result.minimizers.end());
  return result;
}

bool verify_theorem1(const DiscreteInstance& inst) {
  const EnumerationResult opt = optimal_constrained_abstention(inst);
  const BitVector ones(inst.size(), 1);
  const double always_act = post_response_loss(inst, inst.labels_f, ones);
  return opt.loss <= always_act + kTieTol;
}

bool verify_theorem2(const DiscreteInstance& inst) {
  const EnumerationResult opt = optimal_constrained_abstention(inst);
  const BitVector rstar = unconstrained_abstention(inst);
  for (const BitVector& rbar : opt.minimizers) {
    BitVector blended = rbar;
    for (std::size_t j = 0; j < inst.size(); ++j)
      if (!inst.labels_f[j]) blended[j] = rstar[j];
    const double loss = post_response_loss(inst, inst.labels_f, blended);
    if (!(loss <= opt.loss + kTieTol)) return false;
  }
  return true;
}

bool is_informative(const DiscreteInstance& inst) {
  validate(inst);
  double min_pos = std::numeric_limits<double>::infinity();
  double max_neg = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (inst.labels_f[i])
      min_pos = std::min(min_pos, inst.posterior[i]);
    else
      max_neg = std::max(max_neg, inst.posterior[i]);
  }
  return min_pos >= max_neg;  // vacuous when either class is empty
}

bool is_informative_strict(const DiscreteInstance& inst) {
  validate(inst);
  const std::size_t n = inst.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool q_ge = inst.posterior[i] >= inst.posterior[j];
      const bool f_ge = inst.labels_f[i] >= inst.labels_f[j];
      if (q_ge != f_ge) return false;
    }
  }
  return true;
}

TheoremOutcome verify_theorem3(const DiscreteInstance& inst) {
  if (!is_informative(inst)) return TheoremOutcome::precondition_unmet;

  const EnumerationResult opt = optimal_constrained_abstention(inst);
  const BitVector rstar = unconstrained_abstention(inst);
  const double rstar_loss =
      post_response_loss(inst, inst.labels_f, rstar);

  // Coordinates where acting and abstaining cost the principal the same are
  // free to go either way in the unconstrained rule; differences there are
  // tie flips, not genuine dominance.
  const auto tied = [&](std::size_t j) {
    return std::abs(conditional_loss(inst, j) - inst.c) <= kTieTol;
  };

  for (const BitVector& rbar : opt.minimizers) {
    bool negative_coincident = true;
    for (std::size_t j = 0; j < inst.size() && negative_coincident; ++j)
      if (!inst.labels_f[j] && rbar[j] != rstar[j] && !tied(j))
        negative_coincident = false;
    if (!negative_coincident) continue;

    bool geq = true;
    bool strict = false;
    for (std::size_t j = 0; j < inst.size() && geq; ++j) {
      if (tied(j)) continue;
      if (rbar[j] < rstar[j]) geq = false;
      if (rbar[j] > rstar[j]) strict = true;
    }

    // Abstaining less than the unconstrained rule must never strictly help:
    // a minimizer accepting a strict superset is only legitimate when the
    // unconstrained rule itself already attains the optimum (such exact
    // ties arise whenever a rejected agent flees to an equally-scored
    // accepted point).
    if (geq && strict && !(rstar_loss <= opt.loss + kTieTol))
      return TheoremOutcome::fail;
  }
  return TheoremOutcome::pass;
}

DiscreteInstance random_instance(rng::SplitMix64& gen, std::size_t n_min,
                                 std::size_t n_max, bool informative) {
  if (n_min < 1 || n_min > n_max)
    throw std::invalid_argument("instance size range must satisfy 1 <= n_min <= n_max");

  DiscreteInstance inst;
  const std::size_t span = n_max - n_min + 1;
  const std::size_t n = n_min + static_cast<std::size_t>(gen.next() % span);

  std::vector<double> pos(n);
  for (double& p : pos) p = gen.next_unit();

  inst.prior.resize(n);
  double total = 0.0;
  for (double& p : inst.prior) {
    p = 0.05 + gen.next_unit();  // floor keeps every weight well away from 0
    total += p;
  }
  for (double& p : inst.prior) p /= total;

  inst.posterior.resize(n);
  for (double& q : inst.posterior) q = gen.next_unit();

  const double lo = std::log(0.05), hi = std::log(20.0);
  inst.gamma = std::exp(lo + gen.next_unit() * (hi - lo));
  inst.c = gen.next_unit();
  inst.loss.l01 = 0.2 + 0.8 * gen.next_unit();
  inst.loss.l10 = 0.2 + 0.8 * gen.next_unit();

  inst.labels_f.resize(n);
  if (informative) {
    const double tau = gen.next_unit();
    for (std::size_t i = 0; i < n; ++i)
      inst.labels_f[i] = inst.posterior[i] >= tau ? 1 : 0;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      inst.labels_f[i] = static_cast<std::uint8_t>(gen.next() & 1u);
  }

  inst.dist.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    inst.dist[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = pos[i] - pos[j];
      inst.dist[i * n + j] = inst.dist[j * n + i] = diff * diff;
    }
  }

  validate(inst);
  return inst;
}

DiscreteInstance case_study_instance(const GameConfig& cfg, std::size_t n) {
  require_case_study_domain(cfg);
  if (n < 2) throw std::invalid_argument("discretization needs at least 2 points");

  DiscreteInstance inst;
  inst.gamma = cfg.gamma();
  inst.c = cfg.c();
  inst.prior.assign(n, 1.0 / static_cast<double>(n));
  inst.posterior.resize(n);
  inst.labels_f.resize(n);
  inst.dist.resize(n * n);

  std::vector<double> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    inst.posterior[i] = pos[i] >= 0.0 ? 1.0 : 0.0;
    inst.labels_f[i] = pos[i] >= 0.0 ? 1 : 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    inst.dist[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = pos[i] - pos[j];
      inst.dist[i * n + j] = inst.dist[j * n + i] = diff * diff;
    }
  }
  validate(inst);
  return inst;
}

}  // namespace abstain::oracle
