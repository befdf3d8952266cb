#pragma once

#include <span>
#include <vector>

#include "vgame/params.hpp"

namespace vgame {

// Mixed-strategy probability together with its unclamped value. `value` is
// `raw` clamped to [0,1]; `interior` is true when raw already lies in [0,1]
// (a true mixed equilibrium rather than a boundary one).
struct MixedStrategy {
  double raw = 0;
  double value = 0;
  bool interior = false;
};

// Expected utility of a knowledgeable benign player that votes, against a
// target believed malicious with prior mu and attacking with probability q.
double expected_utility_voting(const GameParams& params, double q,
                               const PayoffMatrix& payoffs);

// Expected utility of abstaining: the six-term sum over attack/no-attack and
// monitoring/not-monitoring branches plus the benign-target branch.
double expected_utility_abstaining(const GameParams& params, double q,
                                   const PayoffMatrix& payoffs);

// Equilibrium attack probability q_k at a stage with correct-identification
// probability p_k: the q making the benign player indifferent between voting
// and abstaining. Throws std::domain_error when the denominator vanishes
// (mu = 0, no malicious neighbors to be indifferent about).
MixedStrategy attack_probability_stage(const GameParams& params, double p_k);

// Average attack probability q* over a stage sequence: the arithmetic mean of
// the per-stage (clamped) q_k. Propagates per-stage errors.
double attack_probability_average(const GameParams& params,
                                  std::span<const StageState> stages);

// Equilibrium voting probability s* of a monitoring benign player given the
// single-vote impact delta. Throws std::domain_error on a zero denominator.
MixedStrategy vote_probability(const GameParams& params, double delta);

// Largest benefit that keeps the attack probability positive when every
// benign node monitors (P_m = 1). Requires mu < 1/2; throws std::domain_error
// otherwise (the bound diverges or inverts).
double benefit_upper_bound(const GameParams& params, double p_k);

// Smallest detection rate that keeps a malicious node indifferent when every
// benign node monitors (P_m = 1).
double alpha_lower_bound(const GameParams& params, double delta);

struct EquilibriumResult {
  std::vector<double> p_per_stage;      // p_k per stage, as evaluated
  std::vector<double> q_per_stage_raw;  // unclamped q_k, for diagnostics
  std::vector<double> q_per_stage;      // clamped q_k
  double q_star = 0;                    // mean of q_per_stage
  double s_star_raw = 0;                // unclamped voting probability
  double s_star = 0;                    // clamped voting probability
  bool interior = true;                 // all raw q_k and s* inside [0,1]
};

// Solves the full game over the given stage sequence. Delta for s* is
// evaluated at the first stage of the sequence.
EquilibriumResult solve_equilibrium(const GameParams& params,
                                    std::span<const StageState> stages);

// Stage sequence of a game nobody has voted in yet: stage k of n has n - k
// nodes still to act and the full threshold outstanding.
std::vector<StageState> fresh_game_stages(const GameParams& params, int n, int n_th);

}  // namespace vgame
