#include "vgame/game_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vgame {

namespace {

constexpr int kLogFactorialTableSize = 4097;

const std::array<double, kLogFactorialTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kLogFactorialTableSize> t{};
    for (int i = 0; i < kLogFactorialTableSize; ++i) {
      t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    return t;
  }();
  return table;
}

double log_factorial(int k) {
  if (k < kLogFactorialTableSize) return log_factorial_table()[k];
  // Stirling series; the truncation error is negligible at arguments this
  // large, and it keeps the function free of shared state.
  const double x = static_cast<double>(k) + 1.0;
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * M_PI) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

double log_choose(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// Binomial mass P[X = k], X ~ Bin(n, p). Exact at the p in {0, 1} edges with
// the 0^0 = 1 convention.
double binomial_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
}

// Upper tail P[X >= k]. Anchors the term recurrence at the distribution mode
// so the starting term never underflows while the tail itself is
// representable.
double binomial_upper_tail(int n, int k, double p) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const int mode = std::clamp(static_cast<int>(std::floor((n + 1) * p)), k, n);
  const double at_mode = binomial_pmf(n, mode, p);
  const double odds = p / (1.0 - p);
  double sum = at_mode;
  double term = at_mode;
  for (int i = mode; i < n; ++i) {
    term *= odds * static_cast<double>(n - i) / static_cast<double>(i + 1);
    sum += term;
  }
  term = at_mode;
  for (int i = mode; i > k; --i) {
    term *= static_cast<double>(i) / (odds * static_cast<double>(n - i + 1));
    sum += term;
  }
  return std::min(sum, 1.0);
}

}  // namespace

std::vector<std::string> GameParams::violations() const {
  std::vector<std::string> out;
  auto require = [&out](bool ok, const char* message) {
    if (!ok) out.emplace_back(message);
  };
  require(w > 0.0, "w must be positive");
  require(c_a > 0.0, "c_a must be positive");
  require(c_m > 0.0, "c_m must be positive");
  require(c_v > 0.0, "c_v must be positive");
  require(b > 0.0, "b must be positive");
  require(c_gm > 0.0, "c_gm must be positive");
  require(c_gb > 0.0, "c_gb must be positive");
  require(w > c_a, "w must exceed c_a");
  require(w > c_m, "w must exceed c_m");
  require(b > c_v, "b must exceed c_v");
  require(alpha > 0.5 && alpha <= 1.0, "alpha must lie in (0.5, 1]");
  require(beta >= 0.0 && beta < 0.5, "beta must lie in [0, 0.5)");
  require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0, 1]");
  require(p_m >= 0.0 && p_m <= 1.0, "p_m must lie in [0, 1]");
  require(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0, 1]");
  return out;
}

void GameParams::validate() const {
  const auto problems = violations();
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid game parameters:";
  for (const auto& p : problems) msg << " " << p << ";";
  throw std::invalid_argument(msg.str());
}

void StageState::check_counts() const {
  if (n < 1) throw std::invalid_argument("stage state: n must be positive");
  if (n_th < 1) throw std::invalid_argument("stage state: n_th must be positive");
  if (n_v1 < 0 || n_v2 < 0 || n_l < 0) {
    throw std::invalid_argument("stage state: vote and node counts must be nonnegative");
  }
  if (n_v1 + n_v2 + n_l > n) {
    throw std::invalid_argument("stage state: votes cast plus nodes left exceed n");
  }
  if (!(p_s >= 0.0 && p_s <= 1.0)) {
    throw std::invalid_argument("stage state: p_s must lie in [0, 1]");
  }
}

double stage_probability(const StageState& state) {
  state.check_counts();
  const int required = state.votes_required();
  if (required <= 0) return 1.0;
  if (required > state.n_l) return 0.0;
  return binomial_upper_tail(state.n_l, required, state.p_s);
}

double vote_delta(const StageState& state) {
  state.check_counts();
  const int required = state.votes_required();
  if (required < 1) {
    throw std::domain_error("vote delta undefined: target already identified");
  }
  return binomial_pmf(state.n_l, required - 1, state.p_s);
}

double success_probability(const GameParams& params) {
  return std::clamp(params.lambda * (1.0 - params.mu) * params.alpha * params.p_m,
                    0.0, 1.0);
}

GroupPayoffs group_payoffs(const GameParams& params, double p_k) {
  const double miss = 1.0 - p_k;
  GroupPayoffs g;
  g.vote_attacked = p_k * p_k * params.b - params.c_v - miss * params.c_gm;
  g.abstain_attacked = -miss * miss * params.b - miss * params.c_gm;
  g.vote_not_attacked = -miss * miss * params.b - params.c_v - miss * params.c_gm;
  g.abstain_not_attacked = p_k * p_k * params.b - miss * params.c_gm;
  g.vote_benign_target = p_k * p_k * params.b - params.c_v - miss * params.c_gb;
  g.abstain_benign_target = -miss * miss * params.b - miss * params.c_gb;
  return g;
}

PayoffMatrix payoff_matrix(const GameParams& params, double p_k) {
  const double miss = 1.0 - p_k;
  const double detection_gain = (2.0 * params.alpha - 1.0) * params.w;
  const GroupPayoffs g = group_payoffs(params, p_k);
  PayoffMatrix m;
  m.a1 = g.vote_attacked - params.c_m + detection_gain;
  m.a2 = g.abstain_attacked - params.c_m + detection_gain;
  m.a3 = -params.w - miss * params.c_gm;
  m.a4 = g.vote_not_attacked - params.c_m - params.beta * params.w;
  m.a5 = g.abstain_not_attacked - params.c_m - params.beta * params.w;
  m.a6 = -miss * params.c_gm;
  m.a7 = g.vote_benign_target - params.c_m - params.beta * params.w;
  m.a8 = g.abstain_benign_target - params.c_m - params.beta * params.w;
  m.a9 = -miss * params.c_gb;
  m.t1 = -params.c_a - detection_gain + miss * params.c_gm;
  m.t2 = m.t1;
  m.t3 = -params.c_a + params.w + miss * params.c_gm;
  return m;
}

}  // namespace vgame
