#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vgame/equilibrium.hpp"
#include "vgame/experiments.hpp"
#include "vgame/game_core.hpp"

namespace {

using namespace vgame;

struct CliOptions {
  std::string config_path;
  std::string out_path;
  long long iterations = 100;
  std::uint64_t seed = kDefaultSeed;
  double w = 0, c_a = 0, c_m = 0, c_v = 0, b = 0, c_gm = 0, c_gb = 0;
  double alpha = 0, beta = 0, mu = 0, p_m = 0, lambda = 0, q = 0;
  int n = 0, n_th = 0;
  std::string target;
  std::vector<double> grid;
  std::vector<double> mu_list;
  std::vector<double> pm_list;
};

void add_common_options(CLI::App* cmd, CliOptions& opt, const char* default_out) {
  opt.out_path = default_out;
  cmd->add_option("--config", opt.config_path,
                  "Key-value config file; flags override its values");
  cmd->add_option("--out", opt.out_path, "Output CSV path");
  cmd->add_option("--seed", opt.seed, "Base seed for the deterministic RNG");
  cmd->add_option("--w", opt.w, "Security value of a benign node's asset");
  cmd->add_option("--c-a", opt.c_a, "Cost of an attack");
  cmd->add_option("--c-m", opt.c_m, "Cost of monitoring");
  cmd->add_option("--c-v", opt.c_v, "Cost of casting a vote");
  cmd->add_option("--b", opt.b, "Benefit of a correct strategy");
  cmd->add_option("--c-gm", opt.c_gm, "Group cost of misidentifying a malicious target");
  cmd->add_option("--c-gb", opt.c_gb, "Group cost of misidentifying a benign target");
  cmd->add_option("--alpha", opt.alpha, "Monitoring true positive rate");
  cmd->add_option("--beta", opt.beta, "Monitoring false positive rate");
  cmd->add_option("--mu", opt.mu, "Prior that a neighbor is malicious");
  cmd->add_option("--p-m", opt.p_m, "Probability a benign node monitors a neighbor");
  cmd->add_option("--lambda", opt.lambda, "Probability a remaining node stays in the network");
  cmd->add_option("--q", opt.q, "Attack probability of malicious nodes");
  cmd->add_option("--n", opt.n, "Number of voting neighbors");
  cmd->add_option("--n-th", opt.n_th, "Identification threshold (default: round(n/4))");
  cmd->add_option("--target", opt.target, "Target type: malicious, benign or random")
      ->check(CLI::IsMember({"malicious", "benign", "random"}));
}

void add_iterations_option(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--iterations", opt.iterations, "Games per grid point (default 100)");
}

// Precedence: subcommand defaults, then config file, then flags.
VotingGameConfig assemble_config(const CLI::App* cmd, const CliOptions& opt,
                                 const VotingGameConfig& subcommand_defaults) {
  ConfigDraft draft;
  draft.config = subcommand_defaults;
  if (cmd->count("--config")) apply_config_file(draft, opt.config_path);
  if (cmd->count("--w")) draft.config.params.w = opt.w;
  if (cmd->count("--c-a")) draft.config.params.c_a = opt.c_a;
  if (cmd->count("--c-m")) draft.config.params.c_m = opt.c_m;
  if (cmd->count("--c-v")) draft.config.params.c_v = opt.c_v;
  if (cmd->count("--b")) draft.config.params.b = opt.b;
  if (cmd->count("--c-gm")) draft.config.params.c_gm = opt.c_gm;
  if (cmd->count("--c-gb")) draft.config.params.c_gb = opt.c_gb;
  if (cmd->count("--alpha")) draft.config.params.alpha = opt.alpha;
  if (cmd->count("--beta")) draft.config.params.beta = opt.beta;
  if (cmd->count("--mu")) draft.config.params.mu = opt.mu;
  if (cmd->count("--p-m")) draft.config.params.p_m = opt.p_m;
  if (cmd->count("--lambda")) draft.config.params.lambda = opt.lambda;
  if (cmd->count("--q")) draft.config.q_attack = opt.q;
  if (cmd->count("--n")) draft.config.n = opt.n;
  if (cmd->count("--n-th")) draft.n_th = opt.n_th;
  if (cmd->count("--seed")) draft.config.seed = opt.seed;
  if (cmd->count("--target")) {
    if (opt.target == "malicious") draft.config.target_is_malicious = true;
    else if (opt.target == "benign") draft.config.target_is_malicious = false;
    else draft.config.target_is_malicious.reset();
  }
  VotingGameConfig config = draft.finalize();
  config.validate();
  return config;
}

std::string describe_target(const VotingGameConfig& config) {
  if (!config.target_is_malicious) return "random";
  return *config.target_is_malicious ? "malicious" : "benign";
}

void echo_config(const VotingGameConfig& c, long long iterations) {
  const GameParams& p = c.params;
  std::printf(
      "config: n=%d n_th=%d w=%g b=%g c_a=%g c_m=%g c_v=%g c_gm=%g c_gb=%g "
      "alpha=%g beta=%g mu=%g p_m=%g lambda=%g q=%g target=%s seed=%llu",
      c.n, c.n_th, p.w, p.b, p.c_a, p.c_m, p.c_v, p.c_gm, p.c_gb, p.alpha,
      p.beta, p.mu, p.p_m, p.lambda, c.q_attack, describe_target(c).c_str(),
      static_cast<unsigned long long>(c.seed));
  if (iterations > 0) std::printf(" iterations=%lld", iterations);
  std::printf("\n");
}

void write_series(const std::vector<LabeledSeries>& series, const std::string& out) {
  for (const LabeledSeries& s : series) {
    const std::string path = series_output_path(out, s.label);
    emit_csv(s.rows, path);
    std::printf("wrote %s (%zu rows)\n", path.c_str(), s.rows.size());
  }
}

int run_monte_carlo_command(ExperimentKind kind, const CLI::App* cmd,
                            const CliOptions& opt) {
  VotingGameConfig defaults;
  if (kind == ExperimentKind::sweep_benefit) {
    defaults.q_attack = 0.7;  // the aggressive-attacker setting of the benefit study
    defaults.target_is_malicious = true;
  } else if (kind == ExperimentKind::sweep_attack || kind == ExperimentKind::sweep_alpha) {
    defaults.target_is_malicious = true;
  }

  ExperimentSpec spec;
  spec.kind = kind;
  spec.base = assemble_config(cmd, opt, defaults);
  spec.iterations = opt.iterations;
  spec.output_path = opt.out_path;
  switch (kind) {
    case ExperimentKind::sweep_benefit:
      spec.sweep_grid = cmd->count("--grid") ? opt.grid : default_benefit_grid();
      break;
    case ExperimentKind::sweep_attack:
      spec.sweep_grid = cmd->count("--grid") ? opt.grid : default_attack_grid();
      spec.companion = cmd->count("--mu-list") ? opt.mu_list : default_attack_mu_list();
      break;
    case ExperimentKind::sweep_alpha:
      spec.sweep_grid = cmd->count("--grid") ? opt.grid : default_alpha_grid();
      spec.companion = cmd->count("--pm-list") ? opt.pm_list : default_alpha_pm_list();
      break;
    case ExperimentKind::compare_uncertainty:
      spec.sweep_grid = cmd->count("--grid") ? opt.grid : default_mu_grid();
      break;
    default:
      break;
  }

  echo_config(spec.base, spec.iterations);
  write_series(run_experiment(spec), spec.output_path);
  return 0;
}

int run_equilibrium_command(const CLI::App* cmd, const CliOptions& opt) {
  const VotingGameConfig config = assemble_config(cmd, opt, VotingGameConfig{});
  echo_config(config, /*iterations=*/0);

  const std::vector<StageState> stages =
      fresh_game_stages(config.params, config.n, config.n_th);
  const EquilibriumResult eq = solve_equilibrium(config.params, stages);

  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open results file for writing: " + opt.out_path);
  out << "stage,p_k,delta,q_raw,q,q_interior,q_star,s_star_raw,s_star,s_interior\n";
  char line[512];
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const double raw = eq.q_per_stage_raw[i];
    const bool q_interior = raw >= 0.0 && raw <= 1.0;
    const bool s_interior = eq.s_star_raw >= 0.0 && eq.s_star_raw <= 1.0;
    std::snprintf(line, sizeof(line),
                  "%zu,%.12g,%.12g,%.12g,%.12g,%d,%.12g,%.12g,%.12g,%d\n",
                  i + 1, eq.p_per_stage[i], vote_delta(stages[i]), raw,
                  eq.q_per_stage[i], q_interior ? 1 : 0, eq.q_star,
                  eq.s_star_raw, eq.s_star, s_interior ? 1 : 0);
    out << line;
  }
  out.flush();
  if (!out) throw std::runtime_error("failed while writing results file: " + opt.out_path);

  std::printf("q_star=%.12g s_star=%.12g (raw %.12g) interior=%s\n", eq.q_star,
              eq.s_star, eq.s_star_raw, eq.interior ? "yes" : "no");
  std::printf("wrote %s (%zu rows)\n", opt.out_path.c_str(), stages.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Local voting game engine: closed-form equilibria and Monte Carlo "
      "experiments for voting-based misbehavior detection"};
  app.require_subcommand(1);

  CliOptions opt;

  CLI::App* cmd_run = app.add_subcommand("run", "Monte Carlo at a single configuration");
  add_common_options(cmd_run, opt, "run.csv");
  add_iterations_option(cmd_run, opt);

  CLI::App* cmd_eq = app.add_subcommand(
      "equilibrium", "Per-stage attack probabilities and the voting probability");
  add_common_options(cmd_eq, opt, "equilibrium.csv");

  CLI::App* cmd_benefit = app.add_subcommand(
      "sweep-benefit", "Outcome percentages versus the benefit b (q defaults to 0.7)");
  add_common_options(cmd_benefit, opt, "benefit.csv");
  add_iterations_option(cmd_benefit, opt);
  cmd_benefit->add_option("--grid", opt.grid, "Benefit values to sweep");

  CLI::App* cmd_attack = app.add_subcommand(
      "sweep-attack", "Outcome percentages versus attack probability q, one file per mu");
  add_common_options(cmd_attack, opt, "attack.csv");
  add_iterations_option(cmd_attack, opt);
  cmd_attack->add_option("--grid", opt.grid, "q values to sweep");
  cmd_attack->add_option("--mu-list", opt.mu_list, "mu value per output series");

  CLI::App* cmd_alpha = app.add_subcommand(
      "sweep-alpha", "Outcome percentages versus detection rate alpha, one file per P_m");
  add_common_options(cmd_alpha, opt, "alpha.csv");
  add_iterations_option(cmd_alpha, opt);
  cmd_alpha->add_option("--grid", opt.grid, "alpha values to sweep");
  cmd_alpha->add_option("--pm-list", opt.pm_list, "P_m value per output series");

  CLI::App* cmd_compare = app.add_subcommand(
      "compare-uncertainty",
      "Uncertainty-aware versus certainty-believing nodes across mu");
  add_common_options(cmd_compare, opt, "uncertainty.csv");
  add_iterations_option(cmd_compare, opt);
  cmd_compare->add_option("--grid", opt.grid, "mu values to sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      return run_monte_carlo_command(ExperimentKind::single_run, cmd_run, opt);
    }
    if (cmd_eq->parsed()) {
      return run_equilibrium_command(cmd_eq, opt);
    }
    if (cmd_benefit->parsed()) {
      return run_monte_carlo_command(ExperimentKind::sweep_benefit, cmd_benefit, opt);
    }
    if (cmd_attack->parsed()) {
      return run_monte_carlo_command(ExperimentKind::sweep_attack, cmd_attack, opt);
    }
    if (cmd_alpha->parsed()) {
      return run_monte_carlo_command(ExperimentKind::sweep_alpha, cmd_alpha, opt);
    }
    if (cmd_compare->parsed()) {
      return run_monte_carlo_command(ExperimentKind::compare_uncertainty, cmd_compare, opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
