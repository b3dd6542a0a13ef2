#include "abstain/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "abstain/kernels.hpp"
#include "abstain/rng.hpp"

namespace abstain::mc {

namespace {

// Run fn(0..n-1), each index exactly once, on up to thread_count() workers.
// Indices only ever write their own output slot, so scheduling cannot
// influence results.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace

unsigned thread_count() {
  if (const char* env = std::getenv("ABSTAIN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min(v, 256l));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

Population sample_population(std::size_t count, double sigma,
                             std::uint64_t seed) {
  if (!(sigma >= 0.0))
    throw std::invalid_argument("label noise sigma must be nonnegative");

  Population pop;
  pop.seed = seed;
  pop.sigma = sigma;
  pop.x.resize(count);
  pop.y.resize(count);

  rng::SplitMix64 gen(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = -2.0 + 4.0 * gen.next_unit();
    // The noise draw is consumed even at sigma = 0 so that the feature
    // stream is identical across sigma values for a fixed seed.
    const double u = gen.next_open_unit();
    const double eps = (sigma > 0.0) ? sigma * rng::inverse_normal_cdf(u) : 0.0;
    pop.x[i] = x;
    pop.y[i] = (x + eps >= 0.0) ? 1 : 0;
  }
  return pop;
}

PolicyEvaluation evaluate_policy(const Population& pop, double t,
                                 const GameConfig& cfg, bool strategic) {
  require_case_study_domain(cfg);
  if (!(t >= 0.0 && t <= 2.0))
    throw std::invalid_argument("band half-width must lie in [0, 2]");

  kernels::PolicyEvalParams params;
  params.t = t;
  params.c = cfg.c();
  params.manip_lo = strategic ? t - cfg.k()
                              : std::numeric_limits<double>::infinity();

  const auto sums =
      kernels::evaluate(pop.x.data(), pop.y.data(), pop.size(), params);

  PolicyEvaluation out;
  const double n = static_cast<double>(pop.size());
  if (pop.size() > 0) {
    out.loss = sums.loss_sum / n;
    out.manip_fraction = static_cast<double>(sums.manip_count) / n;
    out.manip_mass_unqualified = sums.manip_mass_sum / n;
  }
  return out;
}

std::vector<double> make_grid(const GridSpec& grid) {
  if (!(grid.step > 0.0))
    throw std::invalid_argument("grid step must be positive");
  if (!(grid.lo >= 0.0 && grid.hi <= 2.0 && grid.lo <= grid.hi))
    throw std::invalid_argument("grid must satisfy 0 <= lo <= hi <= 2");

  std::vector<double> ts;
  if (grid.lo > 0.0) ts.push_back(0.0);

  // When lo is a multiple of step, produce each point with a single rounding
  // (m * step); otherwise fall back to lo + k * step.
  const double m0 = std::round(grid.lo / grid.step);
  const bool on_lattice = std::abs(m0 * grid.step - grid.lo) <= 1e-12;
  for (std::size_t k = 0;; ++k) {
    const double t = on_lattice ? (m0 + static_cast<double>(k)) * grid.step
                                : grid.lo + static_cast<double>(k) * grid.step;
    if (t > grid.hi + 1e-9) break;
    ts.push_back(std::min(t, 2.0));
  }
  return ts;
}

LossCurve compute_curve(const Population& pop, const GameConfig& cfg,
                        const GridSpec& grid) {
  require_case_study_domain(cfg);  // validate before entering worker threads
  const std::vector<double> ts = make_grid(grid);
  LossCurve curve;
  curve.grid = grid;
  curve.rows.resize(ts.size());

  parallel_for(ts.size(), [&](std::size_t k) {
    const double t = ts[k];
    const PolicyEvaluation strat = evaluate_policy(pop, t, cfg, true);
    const PolicyEvaluation truthful = evaluate_policy(pop, t, cfg, false);
    curve.rows[k] = CurveRow{t, strat.loss, truthful.loss,
                             strat.manip_fraction,
                             strat.manip_mass_unqualified};
  });
  return curve;
}

std::size_t argmin_row(const LossCurve& curve, bool strategic) {
  if (curve.rows.empty()) throw std::invalid_argument("empty loss curve");
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.rows.size(); ++i) {
    const double cur = strategic ? curve.rows[i].loss_strategic
                                 : curve.rows[i].loss_nonstrategic;
    const double inc = strategic ? curve.rows[best].loss_strategic
                                 : curve.rows[best].loss_nonstrategic;
    if (cur < inc) best = i;
  }
  return best;
}

GridSearchResult grid_search(const Population& pop, const GameConfig& cfg,
                             bool strategic, const GridSpec& grid) {
  GridSearchResult result;
  result.curve = compute_curve(pop, cfg, grid);
  const std::size_t best = argmin_row(result.curve, strategic);
  result.t_opt = result.curve.rows[best].t;
  result.loss_opt = strategic ? result.curve.rows[best].loss_strategic
                              : result.curve.rows[best].loss_nonstrategic;
  return result;
}

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::gamma: return "gamma";
    case SweepParam::c: return "c";
    case SweepParam::sigma: return "sigma";
  }
  return "?";
}

namespace {

GameConfig substitute(const GameConfig& defaults, SweepParam param,
                      double value) {
  switch (param) {
    case SweepParam::gamma: return defaults.with_gamma(value);
    case SweepParam::c: return defaults.with_c(value);
    case SweepParam::sigma: return defaults.with_sigma(value);
  }
  throw std::invalid_argument("unknown sweep parameter");
}

}  // namespace

std::vector<SweepRow> sweep(SweepParam param, const std::vector<double>& values,
                            const GameConfig& defaults, std::size_t count,
                            std::uint64_t seed, const GridSpec& grid) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const GameConfig cfg = substitute(defaults, param, values[i]);
    const Population pop = sample_population(
        count, cfg.sigma(), rng::substream_seed(seed, i));
    const LossCurve curve = compute_curve(pop, cfg, grid);
    const std::size_t bar = argmin_row(curve, true);
    const std::size_t star = argmin_row(curve, false);
    rows.push_back(SweepRow{values[i], curve.rows[star].t,
                            curve.rows[bar].t,
                            curve.rows[star].loss_nonstrategic,
                            curve.rows[bar].loss_strategic});
  }
  return rows;
}

HarmReport harm(const GameConfig& cfg, std::size_t count, std::uint64_t seed,
                const GridSpec& grid) {
  const Population pop = sample_population(count, cfg.sigma(), seed);
  // make_grid always emits the t = 0 benchmark row first.
  const LossCurve curve = compute_curve(pop, cfg, grid);

  const std::size_t bar = argmin_row(curve, true);
  const std::size_t star = argmin_row(curve, false);

  HarmReport r;
  r.t_bar = curve.rows[bar].t;
  r.t_star = curve.rows[star].t;
  r.loss_strat_opt = curve.rows[bar].loss_strategic;
  r.loss_nonstrat_opt = curve.rows[star].loss_nonstrategic;
  r.loss_strat_zero = curve.rows.front().loss_strategic;
  r.loss_nonstrat_zero = curve.rows.front().loss_nonstrategic;
  r.h_no_abstention = r.loss_strat_zero - r.loss_nonstrat_zero;
  r.h_abstention = r.loss_strat_opt - r.loss_nonstrat_opt;
  r.delta_h = r.h_abstention - r.h_no_abstention;
  return r;
}

namespace {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

}  // namespace abstain::mc
