#pragma once

#include <cstdint>

#include "vgame/simulator.hpp"

namespace vgame {

// Aggregated outcome statistics of repeated games at one parameter point.
// Confidence intervals are 95% normal-approximation half-widths over the
// per-iteration outcome indicators, in percentage points.
struct SweepResult {
  double parameter_value = 0;
  double pct_correct = 0;
  double pct_wrong = 0;
  double pct_undecided = 0;
  double ci_correct = 0;
  double ci_wrong = 0;
  double ci_undecided = 0;
  long long iterations = 0;
  std::uint64_t seed = 0;

  bool operator==(const SweepResult&) const = default;
};

// Runs `iterations` independent games, each seeded from (config.seed, index),
// and aggregates verdict counts. The OpenMP variant distributes iterations
// across threads; because aggregation is integer sums and every iteration
// derives its own seed, it returns bit-identical results to the serial
// reference for any schedule or thread count.
SweepResult monte_carlo(const VotingGameConfig& config, long long iterations);

// Serial reference implementation, kept for testing and benchmarking.
SweepResult monte_carlo_serial(const VotingGameConfig& config, long long iterations);

}  // namespace vgame
