#include "vgame/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>

namespace vgame {

namespace {

double as_percent(long long count, long long total) {
  return 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

// 1.96 * s / sqrt(m) over the 0/100 indicator sample; its sample variance has
// the closed form 100^2 * c(m-c) / (m(m-1)), so the interval is a pure
// function of the integer counts. Zero by convention when m < 2 or the
// variance vanishes.
double ci_half_width(long long count, long long total) {
  if (total < 2) return 0.0;
  const double m = static_cast<double>(total);
  const double c = static_cast<double>(count);
  const double variance = 10000.0 * c * (m - c) / (m * (m - 1.0));
  return 1.96 * std::sqrt(variance / m);
}

SweepResult run_batch(const VotingGameConfig& config, long long iterations,
                      bool parallel) {
  config.validate();
  if (iterations < 1) {
    throw std::invalid_argument("monte carlo: iterations must be >= 1");
  }
  long long correct = 0;
  long long wrong = 0;
  long long undecided = 0;
#pragma omp parallel for reduction(+ : correct, wrong, undecided) \
    schedule(static) if (parallel)
  for (long long i = 0; i < iterations; ++i) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
    const GameOutcome outcome = run_voting_game(config, rng);
    switch (outcome.verdict) {
      case Verdict::correct: ++correct; break;
      case Verdict::wrong: ++wrong; break;
      case Verdict::undecided: ++undecided; break;
    }
  }
  SweepResult result;
  result.parameter_value = config.q_attack;
  result.pct_correct = as_percent(correct, iterations);
  result.pct_wrong = as_percent(wrong, iterations);
  result.pct_undecided = as_percent(undecided, iterations);
  result.ci_correct = ci_half_width(correct, iterations);
  result.ci_wrong = ci_half_width(wrong, iterations);
  result.ci_undecided = ci_half_width(undecided, iterations);
  result.iterations = iterations;
  result.seed = config.seed;
  return result;
}

}  // namespace

SweepResult monte_carlo(const VotingGameConfig& config, long long iterations) {
  return run_batch(config, iterations, true);
}

SweepResult monte_carlo_serial(const VotingGameConfig& config, long long iterations) {
  return run_batch(config, iterations, false);
}

}  // namespace vgame
