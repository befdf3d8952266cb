#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vgame/monte_carlo.hpp"

namespace vgame {

enum class ExperimentKind {
  single_run,
  sweep_benefit,
  sweep_attack,
  sweep_alpha,
  compare_uncertainty,
  equilibrium_report,
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::single_run;
  VotingGameConfig base;
  std::vector<double> sweep_grid;  // primary axis (b, q, alpha or mu)
  std::vector<double> companion;   // mu list (sweep_attack) or P_m list (sweep_alpha)
  long long iterations = 100;
  std::string output_path;

  void validate() const;
};

// One output series: a label (empty for single-series experiments) plus the
// rows in grid order.
struct LabeledSeries {
  std::string label;
  std::vector<SweepResult> rows;
};

// Default grids for the sweep experiments; all overridable from the CLI.
std::vector<double> default_benefit_grid();      // 1.25, 1.5, ..., 8
std::vector<double> default_attack_grid();       // 0, 0.1, ..., 1
std::vector<double> default_alpha_grid();        // 0.55, 0.6, ..., 1
std::vector<double> default_mu_grid();           // 0.05, 0.1, ..., 0.5
std::vector<double> default_attack_mu_list();    // 0.1, 0.2, 0.3
std::vector<double> default_alpha_pm_list();     // 0.5, 0.75, 1.0

// Runs every Monte Carlo experiment kind (everything except
// equilibrium_report). Rows are produced in grid order; every grid point
// reuses the base seed so series share their sampled worlds.
std::vector<LabeledSeries> run_experiment(const ExperimentSpec& spec);

std::vector<SweepResult> run_benefit_sweep(const ExperimentSpec& spec);
std::vector<LabeledSeries> run_attack_sweep(const ExperimentSpec& spec);
std::vector<LabeledSeries> run_alpha_sweep(const ExperimentSpec& spec);
std::vector<LabeledSeries> run_uncertainty_comparison(const ExperimentSpec& spec);

// CSV with a fixed header and one row per result; decimal values carry six
// significant digits; newline-terminated UTF-8.
std::string format_csv(std::span<const SweepResult> rows);
void emit_csv(std::span<const SweepResult> rows, const std::string& path);

// Reads one sweep-result CSV back; throws on malformed content.
std::vector<SweepResult> parse_csv(const std::string& text);

// Output path for a labeled series: "out.csv" + label "mu_0.1" ->
// "out.mu_0.1.csv". An empty label returns the path unchanged.
std::string series_output_path(const std::string& base, const std::string& label);

// Mutable view of a config during assembly: n_th stays unset until finalize()
// so a later n override can still pick the default threshold round(n / 4).
struct ConfigDraft {
  VotingGameConfig config;
  std::optional<int> n_th;

  VotingGameConfig finalize() const;
};

int default_threshold(int n);

// Applies a flat key-value config file (keys are the GameParams and
// VotingGameConfig field names, `key = value` lines, '#' comments). Throws on
// unknown keys or unparsable values.
void apply_config_file(ConfigDraft& draft, const std::string& path);

}  // namespace vgame
