#pragma once

#include "vgame/params.hpp"

namespace vgame {

// Probability that the remaining n_l nodes cast at least the n_r correct
// votes still required. Returns exactly 1 when n_r <= 0 (target already
// identified) and exactly 0 when n_r > n_l (not enough nodes left).
double stage_probability(const StageState& state);

// Increase in stage_probability produced by one additional correct vote:
// the binomial mass at n_r - 1 successes among the n_l remaining nodes.
// Requires n_r >= 1; throws std::domain_error otherwise.
double vote_delta(const StageState& state);

// Default per-node correct-vote probability, lambda * (1 - mu) * alpha * P_m,
// clamped to [0, 1].
double success_probability(const GameParams& params);

// Group (neighborhood-outcome) payoff components of a monitoring benign
// player, per scenario: the target attacked it, the malicious target spared
// it, or the target is benign.
struct GroupPayoffs {
  double vote_attacked = 0;
  double abstain_attacked = 0;
  double vote_not_attacked = 0;
  double abstain_not_attacked = 0;
  double vote_benign_target = 0;
  double abstain_benign_target = 0;
};

GroupPayoffs group_payoffs(const GameParams& params, double p_k);

// Full payoff matrix (individual + group components) at correct-identification
// probability p_k. Callers guarantee params.validate() passes and p_k in [0,1].
PayoffMatrix payoff_matrix(const GameParams& params, double p_k);

}  // namespace vgame
