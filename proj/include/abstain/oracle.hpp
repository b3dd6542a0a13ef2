#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "abstain/game.hpp"
#include "abstain/rng.hpp"

// Brute-force verifier for finite instances of the abstention game.  The
// feature space is n points; policies are enumerated exhaustively, so every
// claim checked here is checked against the true optimum, not a heuristic.
namespace abstain::oracle {

using BitVector = std::vector<std::uint8_t>;  // one 0/1 entry per point

std::string to_string(const BitVector& v);  // e.g. "101"

// A finite game: prior over the n points, posterior q_i = P(y = 1 | x_i),
// the principal's fixed classifier f, squared-distance matrix (row-major,
// symmetric, zero diagonal), quadratic cost scale gamma, abstention cost c,
// misclassification weights.
struct DiscreteInstance {
  std::vector<double> prior;
  std::vector<double> posterior;
  BitVector labels_f;
  std::vector<double> dist;  // n*n squared distances
  double gamma = 1.0;
  double c = 0.0;
  LossSpec loss;

  std::size_t size() const { return prior.size(); }
  double d(std::size_t i, std::size_t j) const { return dist[i * size() + j]; }
};

// Throws std::invalid_argument describing the first defect found.
void validate(const DiscreteInstance& inst);

// Expected loss of acting (not abstaining) on point i:
//   f_i = 1 -> l10 * (1 - q_i),   f_i = 0 -> l01 * q_i.
double conditional_loss(const DiscreteInstance& inst, std::size_t i);

// Pointwise-optimal abstention ignoring manipulation: accept i iff
// conditional_loss(i) <= c (accepting on the tie).
BitVector unconstrained_abstention(const DiscreteInstance& inst);

// Agent i's best report against (f, r): argmax_j f_j*r_j - gamma*d(i, j).
// Ties resolve to the truthful point first, then the cheaper move, then the
// smaller index, making the response a pure function of the instance.
std::size_t discrete_best_response(const DiscreteInstance& inst, std::size_t i,
                                   const BitVector& f, const BitVector& r);

// Principal's expected loss after all agents best-respond.  Each agent
// carries its true posterior with it: landing on an accepted point b costs
// the misclassification weight against q_i, landing on a rejected one costs c.
double post_response_loss(const DiscreteInstance& inst, const BitVector& f,
                          const BitVector& r);

// Exhaustive minimization of post_response_loss over all 2^n abstention
// vectors (f fixed to the instance's classifier).  Returns every minimizer
// within 1e-12 of the optimum, in lexicographic order (first coordinate most
// significant).  Requires n <= 16.
struct EnumerationResult {
  std::vector<BitVector> minimizers;
  double loss = 0.0;
};

EnumerationResult optimal_constrained_abstention(const DiscreteInstance& inst);

// True iff the manipulation-aware optimum is no worse than committing to the
// unconstrained rule: min_r L(r) <= L(unconstrained) (+1e-12).
bool verify_theorem1(const DiscreteInstance& inst);

// True iff every minimizer, after resetting its negative-class coordinates
// to the unconstrained rule's, still attains the optimal loss (within
// 1e-12): optimal abstention can always coincide with the unconstrained rule
// on the points the classifier rejects.
bool verify_theorem2(const DiscreteInstance& inst);

// Classifier "informativeness" used by the no-less-abstention theorem:
// every accepted point's posterior is at least every rejected point's
// (threshold consistency).  Vacuously true if either class is empty.
bool is_informative(const DiscreteInstance& inst);

// Literal biconditional form: q_x >= q_z iff f_x >= f_z for all pairs.
// Forces equal posteriors within each class, so it is rarely satisfied; kept
// as a separate predicate for exactness checks.
bool is_informative_strict(const DiscreteInstance& inst);

enum class TheoremOutcome { pass, fail, precondition_unmet };

// Checks that relaxing abstention below the unconstrained rule never
// strictly helps an informative classifier: if some minimizer (in the
// negative-coincident form of verify_theorem2) accepts a strict superset of
// the unconstrained rule's points, the unconstrained rule itself must
// already attain the optimum.  Non-informative instances report
// precondition_unmet rather than failure.
TheoremOutcome verify_theorem3(const DiscreteInstance& inst);

// Spec of the generated ensemble: n points at uniform positions in [0, 1)
// (distances = squared differences), Dirichlet-like prior, uniform
// posteriors, gamma log-uniform on [0.05, 20], c uniform, and f either
// Bernoulli(1/2) or (informative = true) a threshold on the posterior.
DiscreteInstance random_instance(rng::SplitMix64& gen, std::size_t n_min,
                                 std::size_t n_max, bool informative);

// Uniform n-point discretization of the one-dimensional case study on
// [-2, 2] with noiseless labels: positions -2 + 4i/(n-1), uniform prior,
// q_i = f_i = 1{x_i >= 0}.
DiscreteInstance case_study_instance(const GameConfig& cfg, std::size_t n);

}  // namespace abstain::oracle
