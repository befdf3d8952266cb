#include "vgame/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vgame {

namespace {

std::vector<double> arithmetic_grid(double start, double stop, double step) {
  const int count = static_cast<int>(std::lround((stop - start) / step)) + 1;
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = start + i * step;
  return grid;
}

std::string format_value(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

SweepResult run_point(const VotingGameConfig& config, long long iterations,
                      double parameter_value) {
  SweepResult row = monte_carlo(config, iterations);
  row.parameter_value = parameter_value;
  return row;
}

void require_sweep_grid(const ExperimentSpec& spec) {
  if (spec.sweep_grid.empty()) {
    throw std::invalid_argument("sweep grid must be nonempty");
  }
  if (!std::is_sorted(spec.sweep_grid.begin(), spec.sweep_grid.end(),
                      std::less_equal<double>())) {
    throw std::invalid_argument("sweep grid must be strictly increasing");
  }
}

}  // namespace

void ExperimentSpec::validate() const {
  base.validate();
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  switch (kind) {
    case ExperimentKind::sweep_benefit:
    case ExperimentKind::compare_uncertainty:
      require_sweep_grid(*this);
      break;
    case ExperimentKind::sweep_attack:
    case ExperimentKind::sweep_alpha:
      require_sweep_grid(*this);
      if (companion.empty()) {
        throw std::invalid_argument("companion list must be nonempty");
      }
      break;
    case ExperimentKind::single_run:
    case ExperimentKind::equilibrium_report:
      break;
  }
}

std::vector<double> default_benefit_grid() { return arithmetic_grid(1.25, 8.0, 0.25); }
std::vector<double> default_attack_grid() { return arithmetic_grid(0.0, 1.0, 0.1); }
// Starts just above 0.5: the model requires a detector better than a coin flip.
std::vector<double> default_alpha_grid() { return arithmetic_grid(0.55, 1.0, 0.05); }
std::vector<double> default_mu_grid() { return arithmetic_grid(0.05, 0.5, 0.05); }
std::vector<double> default_attack_mu_list() { return {0.1, 0.2, 0.3}; }
std::vector<double> default_alpha_pm_list() { return {0.5, 0.75, 1.0}; }

std::vector<SweepResult> run_benefit_sweep(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<SweepResult> rows;
  rows.reserve(spec.sweep_grid.size());
  for (double benefit : spec.sweep_grid) {
    VotingGameConfig config = spec.base;
    config.params.b = benefit;
    rows.push_back(run_point(config, spec.iterations, benefit));
  }
  return rows;
}

std::vector<LabeledSeries> run_attack_sweep(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<LabeledSeries> series;
  series.reserve(spec.companion.size());
  for (double mu : spec.companion) {
    LabeledSeries s;
    s.label = "mu_" + format_value(mu);
    s.rows.reserve(spec.sweep_grid.size());
    for (double q : spec.sweep_grid) {
      VotingGameConfig config = spec.base;
      config.params.mu = mu;
      config.q_attack = q;
      s.rows.push_back(run_point(config, spec.iterations, q));
    }
    series.push_back(std::move(s));
  }
  return series;
}

std::vector<LabeledSeries> run_alpha_sweep(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<LabeledSeries> series;
  series.reserve(spec.companion.size());
  for (double pm : spec.companion) {
    LabeledSeries s;
    s.label = "pm_" + format_value(pm);
    s.rows.reserve(spec.sweep_grid.size());
    for (double alpha : spec.sweep_grid) {
      VotingGameConfig config = spec.base;
      config.params.p_m = pm;
      config.params.alpha = alpha;
      s.rows.push_back(run_point(config, spec.iterations, alpha));
    }
    series.push_back(std::move(s));
  }
  return series;
}

std::vector<LabeledSeries> run_uncertainty_comparison(const ExperimentSpec& spec) {
  spec.validate();
  LabeledSeries aware{"aware", {}};
  LabeledSeries certain{"certain", {}};
  aware.rows.reserve(spec.sweep_grid.size());
  certain.rows.reserve(spec.sweep_grid.size());
  for (double mu : spec.sweep_grid) {
    VotingGameConfig config = spec.base;
    config.params.mu = mu;
    aware.rows.push_back(run_point(config, spec.iterations, mu));
    // Same world, decision model blind to uncertainty: perfect detector,
    // every malicious node presumed to attack.
    config.belief_alpha = 1.0;
    config.belief_beta = 0.0;
    config.belief_q = 1.0;
    certain.rows.push_back(run_point(config, spec.iterations, mu));
  }
  return {std::move(aware), std::move(certain)};
}

std::vector<LabeledSeries> run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::single_run: {
      spec.validate();
      return {LabeledSeries{
          "", {run_point(spec.base, spec.iterations, spec.base.q_attack)}}};
    }
    case ExperimentKind::sweep_benefit:
      return {LabeledSeries{"", run_benefit_sweep(spec)}};
    case ExperimentKind::sweep_attack:
      return run_attack_sweep(spec);
    case ExperimentKind::sweep_alpha:
      return run_alpha_sweep(spec);
    case ExperimentKind::compare_uncertainty:
      return run_uncertainty_comparison(spec);
    case ExperimentKind::equilibrium_report:
      throw std::invalid_argument(
          "equilibrium report is not a Monte Carlo experiment");
  }
  throw std::logic_error("unreachable experiment kind");
}

std::string format_csv(std::span<const SweepResult> rows) {
  std::string out =
      "parameter_value,pct_correct,ci_correct,pct_wrong,ci_wrong,"
      "pct_undecided,ci_undecided,iterations,seed\n";
  char line[320];
  for (const SweepResult& r : rows) {
    std::snprintf(line, sizeof(line),
                  "%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%lld,%llu\n",
                  r.parameter_value, r.pct_correct, r.ci_correct, r.pct_wrong,
                  r.ci_wrong, r.pct_undecided, r.ci_undecided, r.iterations,
                  static_cast<unsigned long long>(r.seed));
    out += line;
  }
  return out;
}

void emit_csv(std::span<const SweepResult> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open results file for writing: " + path);
  }
  out << format_csv(rows);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed while writing results file: " + path);
  }
}

std::vector<SweepResult> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("results csv: missing header");
  }
  std::vector<SweepResult> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> parts;
    while (std::getline(fields, field, ',')) parts.push_back(field);
    if (parts.size() != 9) {
      throw std::invalid_argument("results csv: expected 9 fields, got line: " + line);
    }
    SweepResult r;
    r.parameter_value = std::stod(parts[0]);
    r.pct_correct = std::stod(parts[1]);
    r.ci_correct = std::stod(parts[2]);
    r.pct_wrong = std::stod(parts[3]);
    r.ci_wrong = std::stod(parts[4]);
    r.pct_undecided = std::stod(parts[5]);
    r.ci_undecided = std::stod(parts[6]);
    r.iterations = std::stoll(parts[7]);
    r.seed = std::stoull(parts[8]);
    rows.push_back(r);
  }
  return rows;
}

std::string series_output_path(const std::string& base, const std::string& label) {
  if (label.empty()) return base;
  const std::size_t dot = base.find_last_of('.');
  const std::size_t slash = base.find_last_of("/\\");
  const bool has_extension =
      dot != std::string::npos && (slash == std::string::npos || dot > slash);
  if (!has_extension) return base + "." + label;
  return base.substr(0, dot) + "." + label + base.substr(dot);
}

int default_threshold(int n) {
  return std::max(1, static_cast<int>(std::lround(0.25 * n)));
}

VotingGameConfig ConfigDraft::finalize() const {
  VotingGameConfig out = config;
  out.n_th = n_th.value_or(default_threshold(out.n));
  return out;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': cannot parse '" +
                                value + "' as a number");
  }
  if (used != value.size()) {
    throw std::invalid_argument("config key '" + key + "': trailing characters in '" +
                                value + "'");
  }
  return parsed;
}

long long parse_integer(const std::string& key, const std::string& value) {
  const double parsed = parse_double(key, value);
  if (parsed != std::floor(parsed)) {
    throw std::invalid_argument("config key '" + key + "': expected an integer");
  }
  return static_cast<long long>(parsed);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("config key '" + key + "': expected true or false");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

void apply_config_file(ConfigDraft& draft, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config file " + path + " line " +
                                  std::to_string(line_number) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    GameParams& p = draft.config.params;
    if (key == "w") p.w = parse_double(key, value);
    else if (key == "c_a") p.c_a = parse_double(key, value);
    else if (key == "c_m") p.c_m = parse_double(key, value);
    else if (key == "c_v") p.c_v = parse_double(key, value);
    else if (key == "b") p.b = parse_double(key, value);
    else if (key == "c_gm") p.c_gm = parse_double(key, value);
    else if (key == "c_gb") p.c_gb = parse_double(key, value);
    else if (key == "alpha") p.alpha = parse_double(key, value);
    else if (key == "beta") p.beta = parse_double(key, value);
    else if (key == "mu") p.mu = parse_double(key, value);
    else if (key == "p_m") p.p_m = parse_double(key, value);
    else if (key == "lambda") p.lambda = parse_double(key, value);
    else if (key == "q_attack") draft.config.q_attack = parse_double(key, value);
    else if (key == "n") draft.config.n = static_cast<int>(parse_integer(key, value));
    else if (key == "n_th") draft.n_th = static_cast<int>(parse_integer(key, value));
    else if (key == "seed") {
      draft.config.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    } else if (key == "target_is_malicious") {
      draft.config.target_is_malicious = parse_bool(key, value);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "' in " + path);
    }
  }
}

}  // namespace vgame
