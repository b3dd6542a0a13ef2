#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "abstain/game.hpp"

// Seeded Monte Carlo study of the one-dimensional game: sample a population,
// score candidate abstention bands against strategic and truthful agents,
// locate empirical optima on a grid, and sweep parameters.  Everything is a
// pure function of (seed, parameters); reruns are byte-identical.
namespace abstain::mc {

// A sampled cohort: x ~ Uniform[-2, 2), y = 1{x + eps >= 0} with
// eps ~ N(0, sigma^2).  Two draws are consumed per sample even at sigma = 0,
// so the feature vector is invariant across sigma for a fixed seed.
struct Population {
  std::vector<double> x;
  std::vector<std::uint8_t> y;
  std::uint64_t seed = 0;
  double sigma = 0.0;

  std::size_t size() const { return x.size(); }
};

Population sample_population(std::size_t count, double sigma,
                             std::uint64_t seed);

struct PolicyEvaluation {
  double loss = 0.0;                    // mean per-sample loss
  double manip_fraction = 0.0;          // fraction reporting x_hat != x
  double manip_mass_unqualified = 0.0;  // mean |x - x_hat| over x < 0,
                                        // normalized by the full count
};

// Score the band of half-width t against the population.  strategic = true
// moves each sample to its best response first; false scores truthful
// reports (the manipulation columns are then zero).
PolicyEvaluation evaluate_policy(const Population& pop, double t,
                                 const GameConfig& cfg, bool strategic);

struct CurveRow {
  double t = 0.0;
  double loss_strategic = 0.0;
  double loss_nonstrategic = 0.0;
  double manip_fraction = 0.0;          // from the strategic evaluation
  double manip_mass_unqualified = 0.0;  // from the strategic evaluation
};

struct GridSpec {
  double lo = 0.01;
  double hi = 2.0;
  double step = 0.01;
};

// Candidate thresholds: t = 0 first (the no-abstention benchmark), then
// lo, lo + step, ..., up to hi.  Values land on the decimal grid (single
// rounding of m * step), strictly increasing.
std::vector<double> make_grid(const GridSpec& grid);

struct LossCurve {
  std::vector<CurveRow> rows;
  GridSpec grid;
};

// One population, every grid threshold, both agent models.  Grid points are
// scored in parallel (see thread_count); each lands in its own row, so the
// result is independent of scheduling.
LossCurve compute_curve(const Population& pop, const GameConfig& cfg,
                        const GridSpec& grid);

// Index of the row minimizing the chosen column; ties resolve to the
// smallest t (rows are scanned in increasing t with strict improvement).
std::size_t argmin_row(const LossCurve& curve, bool strategic);

struct GridSearchResult {
  LossCurve curve;
  double t_opt = 0.0;
  double loss_opt = 0.0;
};

GridSearchResult grid_search(const Population& pop, const GameConfig& cfg,
                             bool strategic, const GridSpec& grid);

enum class SweepParam { gamma, c, sigma };

const char* to_string(SweepParam p);

struct SweepRow {
  double value = 0.0;
  double t_star = 0.0;   // empirical optimum against truthful agents
  double t_bar = 0.0;    // empirical optimum against strategic agents
  double loss_star = 0.0;
  double loss_bar = 0.0;
};

// One row per value: substitute it into the defaults, sample a fresh
// population from substream_seed(seed, row), compute the curve once, and
// read off both optima.
std::vector<SweepRow> sweep(SweepParam param, const std::vector<double>& values,
                            const GameConfig& defaults, std::size_t count,
                            std::uint64_t seed, const GridSpec& grid);

// Decomposition of the harm of strategic behavior, with and without the
// abstention option:
//   h_no_abstention = L(0, strategic)     - L(0, truthful)
//   h_abstention    = L(t_bar, strategic) - L(t_star, truthful)
//   delta_h         = h_abstention - h_no_abstention
// (negative delta_h: the abstaining principal loses less to manipulation).
struct HarmReport {
  double t_bar = 0.0;
  double t_star = 0.0;
  double loss_strat_opt = 0.0;
  double loss_nonstrat_opt = 0.0;
  double loss_strat_zero = 0.0;
  double loss_nonstrat_zero = 0.0;
  double h_no_abstention = 0.0;
  double h_abstention = 0.0;
  double delta_h = 0.0;
};

HarmReport harm(const GameConfig& cfg, std::size_t count, std::uint64_t seed,
                const GridSpec& grid);

// Worker count for curve evaluation: ABSTAIN_THREADS if set (clamped to
// [1, 256]), else the hardware concurrency.  Results never depend on it.
unsigned thread_count();

}  // namespace abstain::mc
