#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vgame/params.hpp"
#include "vgame/rng.hpp"

namespace vgame {

inline constexpr std::uint64_t kDefaultSeed = 12345;

enum class NodeKind { benign, malicious };

enum class Observation { none, saw_benign, saw_malicious };

// One voting neighbor of the target, as sampled at game start.
struct NodeProfile {
  NodeKind kind = NodeKind::benign;
  bool monitored_target = false;   // benign only
  bool attacked_by_target = false; // set when a malicious target attacked this node
  Observation observation = Observation::none;
};

struct VotingGameConfig {
  GameParams params;
  int n = 40;             // voting neighbors of the target
  int n_th = 10;          // identification threshold
  double q_attack = 0.4;  // attack probability used by the malicious population
  std::optional<bool> target_is_malicious;  // forced target type, else drawn with mu
  std::uint64_t seed = kDefaultSeed;

  // Decision-model overrides: nodes evaluate utilities with these instead of
  // the true parameters when set. The sampled world is unaffected, so two
  // configs differing only here face identical randomness under one seed.
  std::optional<double> belief_alpha;
  std::optional<double> belief_beta;
  std::optional<double> belief_q;

  std::vector<std::string> violations() const;
  void validate() const;
};

enum class Verdict { correct, wrong, undecided };

struct GameOutcome {
  Verdict verdict = Verdict::undecided;
  int stages_run = 0;
  int votes_correct = 0;  // votes matching the target's true type
  int votes_wrong = 0;
};

struct Population {
  NodeKind target = NodeKind::benign;
  std::vector<NodeProfile> nodes;
};

// Samples the target type, each neighbor's type, monitoring choice, whether a
// malicious target attacked it, and the resulting observation. Draw order is
// fixed: target first, then one node at a time.
Population spawn_population(const VotingGameConfig& config, Rng& rng);

// Plays one full sequential voting game: nodes act in a uniformly random
// order; malicious nodes always vote against the target's true type; benign
// monitoring nodes vote their observation when the expected utility of voting
// is at least that of abstaining, evaluated at their belief parameters and
// the vote counts read through their own observation. Stops the moment either
// vote count reaches n_th.
GameOutcome run_voting_game(const VotingGameConfig& config, Rng& rng);

Verdict classify_outcome(NodeKind target, int votes_correct, int votes_wrong,
                         int n_th);

}  // namespace vgame
