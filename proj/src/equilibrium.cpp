#include "vgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vgame/game_core.hpp"

namespace vgame {

namespace {

MixedStrategy clamp_strategy(double raw) {
  MixedStrategy s;
  s.raw = raw;
  s.value = std::clamp(raw, 0.0, 1.0);
  s.interior = raw >= 0.0 && raw <= 1.0;
  return s;
}

// 2p^2 - 2p + 1 = p^2 + (1-p)^2, the chance that one more vote and the game
// outcome agree in type.
double agreement_weight(double p_k) {
  return 2.0 * p_k * p_k - 2.0 * p_k + 1.0;
}

}  // namespace

double expected_utility_voting(const GameParams& params, double q,
                               const PayoffMatrix& payoffs) {
  const double mu = params.mu;
  return mu * q * payoffs.a1 + mu * (1.0 - q) * payoffs.a4 +
         (1.0 - mu) * payoffs.a7;
}

double expected_utility_abstaining(const GameParams& params, double q,
                                   const PayoffMatrix& payoffs) {
  const double mu = params.mu;
  const double pm = params.p_m;
  return mu * q * pm * payoffs.a2 + mu * q * (1.0 - pm) * payoffs.a3 +
         mu * (1.0 - q) * pm * payoffs.a5 +
         mu * (1.0 - q) * (1.0 - pm) * payoffs.a6 +
         (1.0 - mu) * pm * payoffs.a8 + (1.0 - mu) * (1.0 - pm) * payoffs.a9;
}

MixedStrategy attack_probability_stage(const GameParams& params, double p_k) {
  const double k = agreement_weight(p_k);
  const double numerator =
      params.mu * (1.0 + params.p_m) * k * params.b +
      (1.0 - params.p_m) * (params.c_m + params.beta * params.w) + params.c_v -
      p_k * p_k * params.b -
      params.p_m * (1.0 - p_k) * (1.0 - p_k) * params.b;
  const double denominator =
      params.mu * (1.0 + params.p_m) * k * params.b +
      params.mu * (1.0 - params.p_m) * (2.0 * params.alpha + params.beta) * params.w;
  if (denominator == 0.0) {
    throw std::domain_error(
        "attack probability undefined: indifference denominator is zero (mu = 0)");
  }
  return clamp_strategy(numerator / denominator);
}

double attack_probability_average(const GameParams& params,
                                  std::span<const StageState> stages) {
  if (stages.empty()) {
    throw std::invalid_argument("attack probability average: stage list is empty");
  }
  double sum = 0.0;
  for (const StageState& stage : stages) {
    sum += attack_probability_stage(params, stage_probability(stage)).value;
  }
  return sum / static_cast<double>(stages.size());
}

MixedStrategy vote_probability(const GameParams& params, double delta) {
  const double numerator =
      params.c_a + (2.0 * params.alpha * params.p_m - 1.0) * params.w - params.c_gm;
  const double denominator =
      (1.0 - params.p_m) *
          (-params.c_a + (1.0 - 2.0 * params.alpha) * params.w + params.c_gm) -
      delta * params.c_gm;
  if (denominator == 0.0) {
    throw std::domain_error("vote probability undefined: denominator is zero");
  }
  return clamp_strategy(numerator / denominator);
}

double benefit_upper_bound(const GameParams& params, double p_k) {
  if (params.mu >= 0.5) {
    throw std::domain_error("benefit bound undefined for mu >= 1/2");
  }
  return params.c_v / ((1.0 - 2.0 * params.mu) * agreement_weight(p_k));
}

double alpha_lower_bound(const GameParams& params, double delta) {
  return (params.w - params.c_a + params.c_gm * (1.0 - delta)) / (2.0 * params.w);
}

EquilibriumResult solve_equilibrium(const GameParams& params,
                                    std::span<const StageState> stages) {
  if (stages.empty()) {
    throw std::invalid_argument("equilibrium: stage list is empty");
  }
  EquilibriumResult result;
  result.p_per_stage.reserve(stages.size());
  result.q_per_stage_raw.reserve(stages.size());
  result.q_per_stage.reserve(stages.size());
  double sum = 0.0;
  for (const StageState& stage : stages) {
    const double p_k = stage_probability(stage);
    const MixedStrategy q = attack_probability_stage(params, p_k);
    result.p_per_stage.push_back(p_k);
    result.q_per_stage_raw.push_back(q.raw);
    result.q_per_stage.push_back(q.value);
    result.interior = result.interior && q.interior;
    sum += q.value;
  }
  result.q_star = sum / static_cast<double>(stages.size());
  const MixedStrategy s = vote_probability(params, vote_delta(stages.front()));
  result.s_star_raw = s.raw;
  result.s_star = s.value;
  result.interior = result.interior && s.interior;
  return result;
}

std::vector<StageState> fresh_game_stages(const GameParams& params, int n, int n_th) {
  if (n < 1) throw std::invalid_argument("fresh game: n must be positive");
  if (n_th < 1 || n_th > n) {
    throw std::invalid_argument("fresh game: n_th must lie in [1, n]");
  }
  const double p_s = success_probability(params);
  std::vector<StageState> stages;
  stages.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    stages.push_back(StageState{n, n_th, 0, 0, n - k, p_s});
  }
  return stages;
}

}  // namespace vgame
