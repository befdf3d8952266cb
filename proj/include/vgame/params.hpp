#pragma once

#include <string>
#include <vector>

namespace vgame {

// Scalar model constants for the local voting game. Defaults follow the
// standard experiment setup: alpha=0.95, beta=0.05, P_m=0.75, mu=0.2,
// c_gb=c_gm=4, w=4 > b=3 > c_m=c_a=c_v=1.
struct GameParams {
  double w = 4.0;       // security value of a benign node's asset
  double c_a = 1.0;     // cost of an attack
  double c_m = 1.0;     // cost of monitoring
  double c_v = 1.0;     // cost of casting a vote
  double b = 3.0;       // benefit of a correct strategy, also the punishment magnitude
  double c_gm = 4.0;    // group cost of misidentifying a malicious target
  double c_gb = 4.0;    // group cost of misidentifying a benign target
  double alpha = 0.95;  // true positive rate of the monitoring system
  double beta = 0.05;   // false positive rate of the monitoring system
  double mu = 0.2;      // prior that a neighbor is malicious
  double p_m = 0.75;    // probability a benign node monitors a given neighbor
  double lambda = 1.0;  // probability a remaining node is still in the network

  // One message per violated constraint, empty when the parameter set is valid.
  std::vector<std::string> violations() const;

  // Throws std::invalid_argument listing every violated constraint.
  void validate() const;
};

// Voting bookkeeping at one stage of a running game. A live stage has both
// vote counts below n_th; the degenerate already-identified states are still
// accepted by stage_probability, which resolves them via its boundary rules.
struct StageState {
  int n = 0;        // total nodes in the neighborhood
  int n_th = 0;     // votes of one type needed to identify the target
  int n_v1 = 0;     // correct votes already cast
  int n_v2 = 0;     // wrong votes already cast
  int n_l = 0;      // nodes left in the game
  double p_s = 0.0; // per-remaining-node correct-vote probability

  // Remaining correct votes required to identify the target (n_r).
  int votes_required() const { return n_th - n_v1; }

  // Throws std::invalid_argument on negative counts, count overflow or a
  // probability outside [0,1].
  void check_counts() const;
};

// The twelve nonzero payoffs of the two-player stage game. Entries 1..3 are
// the malicious-target-attacked scenario, 4..6 malicious-target-not-attacked,
// 7..9 benign target; within each triple the order is monitoring-vote,
// monitoring-abstain, not-monitoring. a* belong to the benign player, t* to
// the target; t4..t9 are identically zero.
struct PayoffMatrix {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0, a7 = 0, a8 = 0, a9 = 0;
  double t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5 = 0, t6 = 0, t7 = 0, t8 = 0, t9 = 0;
};

}  // namespace vgame
