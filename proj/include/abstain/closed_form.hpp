#pragma once

#include <optional>
#include <string>

#include "abstain/game.hpp"

// Exact solutions of the one-dimensional game: x ~ Uniform[-2, 2], noiseless
// labels y = 1{x >= 0}, sign classifier, symmetric abstention band of
// half-width T, quadratic manipulation cost gamma = 1/K^2.
namespace abstain::closed_form {

// An agent's optimal report against the committed policy.
struct BestResponse {
  double x_hat;      // the report
  bool manipulated;  // x_hat != x
  double utility;    // accept*predict - gamma*(x_hat - x)^2 at the report
};

// Optimal report against the band of half-width t.  Exactly the agents in
// the open interval (t - K, t) move, and they move to t: anyone below can't
// afford the jump, anyone at or above t is already accepted as positive (or
// prefers to stay put on a tie).  When t - K falls below the domain floor,
// every agent in [domain_lo, t) moves.
BestResponse best_response(double x, double t, const GameConfig& cfg);

// Optimal report when the principal never abstains (classifier alone).
// Agents in [-K, 0) move to 0; the left endpoint moves even though it is
// indifferent, matching the convention used by the manipulation-mass
// integrals below.
BestResponse best_response_no_abstention(double x, const GameConfig& cfg);

// Principal's expected loss at band half-width t under best responses,
// noiseless labels.  With a = max(-2, t - K):
//   L(t) = (1/4) * [ c * max(0, t + a) + max(0, -a) ]
// The first term is the abstention band that survives manipulation, the
// second the unqualified mass that escapes into acceptance; the formula
// caps at 1/2 once the entire unqualified half flees (a = -2).
double analytic_loss(double t, const GameConfig& cfg);

// Set of loss-minimizing band half-widths, [lo, hi], with the canonical
// (smallest) choice and the attained loss.
struct OptimalThreshold {
  double lo = 0.0;
  double hi = 0.0;
  double canonical = 0.0;  // = lo
  double loss = 0.0;
  bool unique() const { return lo == hi; }
};

OptimalThreshold optimal_threshold(const GameConfig& cfg);

// Expected loss of the bare classifier (no abstention): K/4 up to K = 2,
// then 1/2 once the whole unqualified half can reach 0.
double no_abstention_loss(const GameConfig& cfg);

// Parameter region that shapes the expected manipulation distance of the
// *abstaining* principal at her optimal band.  Buckets are keyed by the cost
// scale K and the abstention cost c; formulas below are per bucket.
enum class ManipulationRegime {
  low_k_low_c,    // 0 < K <= 2, c < 1/2 : band at K deters everyone -> 0
  low_k_high_c,   // 0 < K <= 2, c >= 1/2: band at K/2             -> 3K^2/32
  mid_k_low_c,    // 2 < K <= 4, c < 1/2 : band clipped at 2       -> K^2/8 - 1/2
  mid_k_high_c,   // 2 < K <= 4, c >= 1/2: band at K/2             -> 3K^2/32
  high_k,         // K > 4: every band is equally bad              -> t/2 + 1/2
};

const char* to_string(ManipulationRegime r);

struct ManipulationReport {
  double expected_distance;  // E |x - x_hat| over unqualified agents (x < 0)
  ManipulationRegime regime;
};

// Expected manipulation distance of unqualified agents under the bare
// classifier: K^2/8 for K <= 2, else 1/2.
ManipulationReport expected_manipulation_no_abstention(const GameConfig& cfg);

// Same quantity at the abstaining principal's optimal band.  For K > 4 the
// optimizer set is all of [0, 2] and the mass depends on which band is
// chosen, so t_choice is required there (and ignored elsewhere, where the
// canonical optimizer is used).
ManipulationReport expected_manipulation_with_abstention(
    const GameConfig& cfg, std::optional<double> t_choice = std::nullopt);

enum class ManipulationOrdering {
  abstention_lower,   // abstaining induces strictly less manipulation
  equal,              // crossover: equal up to 1e-12
  abstention_higher,  // abstaining induces strictly more
};

const char* to_string(ManipulationOrdering o);

// Sign of E[manipulation with abstention] - E[manipulation without], with
// |difference| <= 1e-12 classified as equal.  The crossovers sit at
// K = sqrt(8) (c < 1/2) and K = sqrt(16/3) (c >= 1/2).
ManipulationOrdering manipulation_comparison(
    const GameConfig& cfg, std::optional<double> t_choice = std::nullopt);

// ---- helpers for the reporting columns of the loss curve ----------------

// Expected loss of the band against *non-strategic* agents (truthful
// reports, noiseless labels): only the abstained mass pays, c * t/2.
double analytic_nonstrategic_loss(double t, const GameConfig& cfg);

// Fraction of all agents that manipulate against the band: width of the
// moving interval over the domain, (t - max(-2, t - K)) / 4.
double analytic_manip_fraction(double t, const GameConfig& cfg);

// Expected manipulation distance of unqualified agents (x < 0) against the
// band of half-width t (not necessarily the optimal one).
double analytic_manip_mass_unqualified(double t, const GameConfig& cfg);

}  // namespace abstain::closed_form
