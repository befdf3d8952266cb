#include "vgame/simulator.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vgame/equilibrium.hpp"
#include "vgame/game_core.hpp"

namespace vgame {

namespace {

// Parameters as the deciding node sees them: world values with any belief
// overrides applied.
GameParams decision_params(const VotingGameConfig& config) {
  GameParams p = config.params;
  if (config.belief_alpha) p.alpha = *config.belief_alpha;
  if (config.belief_beta) p.beta = *config.belief_beta;
  return p;
}

}  // namespace

std::vector<std::string> VotingGameConfig::violations() const {
  std::vector<std::string> out = params.violations();
  if (n < 1) out.emplace_back("n must be positive");
  if (n_th < 1) out.emplace_back("n_th must be positive");
  if (n >= 1 && n_th > n) out.emplace_back("n_th must not exceed n");
  if (!(q_attack >= 0.0 && q_attack <= 1.0)) {
    out.emplace_back("q_attack must lie in [0, 1]");
  }
  if (belief_alpha && !(*belief_alpha > 0.5 && *belief_alpha <= 1.0)) {
    out.emplace_back("belief_alpha must lie in (0.5, 1]");
  }
  if (belief_beta && !(*belief_beta >= 0.0 && *belief_beta < 0.5)) {
    out.emplace_back("belief_beta must lie in [0, 0.5)");
  }
  if (belief_q && !(*belief_q >= 0.0 && *belief_q <= 1.0)) {
    out.emplace_back("belief_q must lie in [0, 1]");
  }
  return out;
}

void VotingGameConfig::validate() const {
  const auto problems = violations();
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid game config:";
  for (const auto& p : problems) msg << " " << p << ";";
  throw std::invalid_argument(msg.str());
}

Population spawn_population(const VotingGameConfig& config, Rng& rng) {
  Population population;
  if (config.target_is_malicious) {
    population.target =
        *config.target_is_malicious ? NodeKind::malicious : NodeKind::benign;
  } else {
    population.target =
        rng.bernoulli(config.params.mu) ? NodeKind::malicious : NodeKind::benign;
  }
  population.nodes.resize(static_cast<std::size_t>(config.n));
  for (NodeProfile& node : population.nodes) {
    node.kind = rng.bernoulli(config.params.mu) ? NodeKind::malicious
                                                : NodeKind::benign;
    if (node.kind != NodeKind::benign) continue;
    node.monitored_target = rng.bernoulli(config.params.p_m);
    if (population.target == NodeKind::malicious) {
      node.attacked_by_target = rng.bernoulli(config.q_attack);
    }
    if (node.monitored_target) {
      const double p_alarm =
          node.attacked_by_target ? config.params.alpha : config.params.beta;
      node.observation = rng.bernoulli(p_alarm) ? Observation::saw_malicious
                                                : Observation::saw_benign;
    }
  }
  return population;
}

GameOutcome run_voting_game(const VotingGameConfig& config, Rng& rng) {
  config.validate();
  const Population population = spawn_population(config, rng);

  std::vector<int> order(population.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  const GameParams beliefs = decision_params(config);
  const double q_belief = config.belief_q.value_or(config.q_attack);
  const double p_s = success_probability(beliefs);

  int votes_malicious = 0;  // votes alleging a malicious target
  int votes_benign = 0;
  int stages = 0;
  for (int k = 1; k <= config.n; ++k) {
    const NodeProfile& node = population.nodes[static_cast<std::size_t>(order[k - 1])];
    ++stages;
    if (node.kind == NodeKind::malicious) {
      // Always against a benign target, always for a malicious one.
      if (population.target == NodeKind::benign) {
        ++votes_malicious;
      } else {
        ++votes_benign;
      }
    } else if (node.observation != Observation::none) {
      // A knowledgeable node reads the public counts through its own
      // observation: votes agreeing with what it saw are the correct tally.
      const bool saw_malicious = node.observation == Observation::saw_malicious;
      StageState stage;
      stage.n = config.n;
      stage.n_th = config.n_th;
      stage.n_v1 = saw_malicious ? votes_malicious : votes_benign;
      stage.n_v2 = saw_malicious ? votes_benign : votes_malicious;
      stage.n_l = config.n - k;
      stage.p_s = p_s;
      const double p_k = stage_probability(stage);
      const PayoffMatrix payoffs = payoff_matrix(beliefs, p_k);
      if (expected_utility_voting(beliefs, q_belief, payoffs) >=
          expected_utility_abstaining(beliefs, q_belief, payoffs)) {
        if (saw_malicious) {
          ++votes_malicious;
        } else {
          ++votes_benign;
        }
      }
    }
    if (votes_malicious >= config.n_th || votes_benign >= config.n_th) break;
  }

  const bool target_malicious = population.target == NodeKind::malicious;
  GameOutcome outcome;
  outcome.stages_run = stages;
  outcome.votes_correct = target_malicious ? votes_malicious : votes_benign;
  outcome.votes_wrong = target_malicious ? votes_benign : votes_malicious;
  outcome.verdict = classify_outcome(population.target, outcome.votes_correct,
                                     outcome.votes_wrong, config.n_th);
  return outcome;
}

Verdict classify_outcome(NodeKind target, int votes_correct, int votes_wrong,
                         int n_th) {
  (void)target;  // counts are already relative to the target's true type
  if (votes_correct < 0 || votes_wrong < 0) {
    throw std::invalid_argument("classify: vote counts must be nonnegative");
  }
  if (votes_correct >= n_th && votes_wrong >= n_th) {
    throw std::invalid_argument(
        "classify: both counts reached the threshold; early stopping was violated");
  }
  if (votes_correct >= n_th) return Verdict::correct;
  if (votes_wrong >= n_th) return Verdict::wrong;
  return Verdict::undecided;
}

}  // namespace vgame
