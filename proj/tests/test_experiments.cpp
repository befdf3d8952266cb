#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "vgame/experiments.hpp"

using namespace vgame;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::path("experiments_scratch");
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_temp_config(const std::string& name, const std::string& body) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << body;
  out.close();
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("an empty config file keeps the documented defaults") {
  const std::string path = write_temp_config("empty.cfg", "# nothing here\n\n");
  ConfigDraft draft;
  apply_config_file(draft, path);
  const VotingGameConfig config = draft.finalize();
  CHECK(config.n == 40);
  CHECK(config.n_th == 10);
  CHECK(config.q_attack == 0.4);
  CHECK(config.seed == kDefaultSeed);
  CHECK(config.params.alpha == 0.95);
  CHECK(config.params.beta == 0.05);
  CHECK(config.params.p_m == 0.75);
  CHECK(config.params.mu == 0.2);
  CHECK(config.params.w == 4.0);
  CHECK(config.params.b == 3.0);
  CHECK(config.params.c_gm == 4.0);
  CHECK(config.params.c_gb == 4.0);
  CHECK(config.params.c_a == 1.0);
  CHECK(config.params.c_m == 1.0);
  CHECK(config.params.c_v == 1.0);
  CHECK_FALSE(config.target_is_malicious.has_value());
}

TEST_CASE("config values are applied and the threshold default tracks n") {
  const std::string path = write_temp_config(
      "values.cfg",
      "n = 60\nmu = 0.3\nq_attack = 0.55\ntarget_is_malicious = true\nseed = 77\n");
  ConfigDraft draft;
  apply_config_file(draft, path);
  const VotingGameConfig config = draft.finalize();
  CHECK(config.n == 60);
  CHECK(config.n_th == 15);  // round(0.25 * 60), no explicit n_th
  CHECK(config.params.mu == 0.3);
  CHECK(config.q_attack == 0.55);
  CHECK(config.seed == 77);
  REQUIRE(config.target_is_malicious.has_value());
  CHECK(*config.target_is_malicious);
}

TEST_CASE("constraint violations carry named messages") {
  const std::string path = write_temp_config("bad.cfg", "b = 0.5\n");
  ConfigDraft draft;
  apply_config_file(draft, path);
  const VotingGameConfig config = draft.finalize();
  CHECK_THROWS_WITH_AS(config.validate(),
                       "invalid game config: b must exceed c_v;",
                       std::invalid_argument);
}

TEST_CASE("unknown keys and malformed values are rejected") {
  ConfigDraft draft;
  const std::string unknown = write_temp_config("unknown.cfg", "speed = 9\n");
  CHECK_THROWS_WITH_AS(apply_config_file(draft, unknown),
                       ("unknown config key 'speed' in " + unknown).c_str(),
                       std::invalid_argument);
  const std::string garbage = write_temp_config("garbage.cfg", "mu = fast\n");
  CHECK_THROWS_AS(apply_config_file(draft, garbage), std::invalid_argument);
  const std::string fraction = write_temp_config("fraction.cfg", "n = 12.5\n");
  CHECK_THROWS_AS(apply_config_file(draft, fraction), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_file(draft, "does_not_exist.cfg"), std::runtime_error);
}

TEST_CASE("later overrides win over config file values") {
  const std::string path = write_temp_config("override.cfg", "mu = 0.3\nb = 5\n");
  ConfigDraft draft;
  apply_config_file(draft, path);
  draft.config.params.mu = 0.1;  // flag-style override applied after the file
  const VotingGameConfig config = draft.finalize();
  CHECK(config.params.mu == 0.1);
  CHECK(config.params.b == 5.0);
}

TEST_CASE("csv emission") {
  SUBCASE("no results produce a header-only file") {
    const std::string text = format_csv({});
    CHECK(text ==
          "parameter_value,pct_correct,ci_correct,pct_wrong,ci_wrong,"
          "pct_undecided,ci_undecided,iterations,seed\n");
  }

  SUBCASE("one result produces exactly two lines") {
    SweepResult r;
    r.parameter_value = 3.0;
    r.pct_correct = 55.5;
    r.pct_wrong = 44.5;
    r.iterations = 200;
    r.seed = 12345;
    const std::string text = format_csv({&r, 1});
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.back() == '\n');
  }

  SUBCASE("emitted values survive a parse round trip at six significant digits") {
    std::vector<SweepResult> rows;
    VotingGameConfig config;
    rows.push_back(monte_carlo(config, 300));
    rows[0].parameter_value = 0.123456789;
    config.params.b = 1.1;
    rows.push_back(monte_carlo(config, 300));
    rows[1].parameter_value = 7.0 / 3.0;

    const auto path = (scratch_dir() / "roundtrip.csv").string();
    emit_csv(rows, path);
    const auto parsed = parse_csv(read_file(path));
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(parsed[i].parameter_value ==
            doctest::Approx(rows[i].parameter_value).epsilon(1e-5));
      CHECK(parsed[i].pct_correct == doctest::Approx(rows[i].pct_correct).epsilon(1e-5));
      CHECK(parsed[i].ci_correct == doctest::Approx(rows[i].ci_correct).epsilon(1e-5));
      CHECK(parsed[i].pct_wrong == doctest::Approx(rows[i].pct_wrong).epsilon(1e-5));
      CHECK(parsed[i].pct_undecided ==
            doctest::Approx(rows[i].pct_undecided).epsilon(1e-5));
      CHECK(parsed[i].iterations == rows[i].iterations);
      CHECK(parsed[i].seed == rows[i].seed);
    }
  }

  SUBCASE("formatting is reproducible byte for byte") {
    VotingGameConfig config;
    std::vector<SweepResult> rows{monte_carlo(config, 123)};
    CHECK(format_csv(rows) == format_csv(rows));
  }

  SUBCASE("an unwritable path reports the path in the error") {
    SweepResult r;
    CHECK_THROWS_WITH_AS(emit_csv({&r, 1}, "no_such_dir/out.csv"),
                         "cannot open results file for writing: no_such_dir/out.csv",
                         std::runtime_error);
  }
}

TEST_CASE("series output paths embed the label before the extension") {
  CHECK(series_output_path("out.csv", "") == "out.csv");
  CHECK(series_output_path("out.csv", "mu_0.1") == "out.mu_0.1.csv");
  CHECK(series_output_path("dir.d/out", "pm_0.75") == "dir.d/out.pm_0.75");
  CHECK(series_output_path("results", "aware") == "results.aware");
}

TEST_CASE("sweep grids must be nonempty and strictly increasing") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::sweep_benefit;
  spec.iterations = 1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.sweep_grid = {2.0, 2.0, 3.0};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.sweep_grid = {2.0, 3.0};
  CHECK_NOTHROW(spec.validate());
  spec.iterations = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("default grids match their documented shapes") {
  CHECK(default_benefit_grid().size() == 28);
  CHECK(default_benefit_grid().front() == doctest::Approx(1.25));
  CHECK(default_benefit_grid().back() == doctest::Approx(8.0));
  CHECK(default_attack_grid().size() == 11);
  CHECK(default_alpha_grid().front() == doctest::Approx(0.55));
  CHECK(default_mu_grid().size() == 10);
}

TEST_CASE("attack sweep produces one labeled series per mu") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::sweep_attack;
  spec.base.n = 12;
  spec.base.n_th = 3;
  spec.base.target_is_malicious = true;
  spec.iterations = 40;
  spec.sweep_grid = {0.2, 0.8};
  spec.companion = {0.1, 0.3};
  const auto series = run_attack_sweep(spec);
  REQUIRE(series.size() == 2);
  CHECK(series[0].label == "mu_0.1");
  CHECK(series[1].label == "mu_0.3");
  for (const LabeledSeries& s : series) {
    REQUIRE(s.rows.size() == 2);
    CHECK(s.rows[0].parameter_value == 0.2);
    CHECK(s.rows[1].parameter_value == 0.8);
    for (const SweepResult& row : s.rows) CHECK(row.seed == spec.base.seed);
  }
}

TEST_CASE("alpha sweep produces one labeled series per monitoring level") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::sweep_alpha;
  spec.base.target_is_malicious = true;
  spec.iterations = 2000;
  spec.sweep_grid = {0.6, 0.95};
  spec.companion = {0.75, 1.0};
  const auto series = run_alpha_sweep(spec);
  REQUIRE(series.size() == 2);
  CHECK(series[0].label == "pm_0.75");
  CHECK(series[1].label == "pm_1");
  for (const LabeledSeries& s : series) {
    REQUIRE(s.rows.size() == 2);
    // Correct identification of a malicious target improves with the
    // detection rate within each monitoring level.
    CHECK(s.rows[1].pct_correct >= s.rows[0].pct_correct);
  }
}

TEST_CASE("aggressive attackers draw fewer wrong identifications") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::sweep_attack;
  spec.base.target_is_malicious = true;
  spec.iterations = 2000;
  spec.sweep_grid = {0.4, 1.0};
  spec.companion = {0.2};
  const auto rows = run_attack_sweep(spec).front().rows;
  CHECK(rows[1].pct_wrong < rows[0].pct_wrong);
}

TEST_CASE("a never-attacking malicious target is never identified without false positives") {
  // With q = 0 and beta = 0 no node can ever observe anything malicious, so
  // correct votes are impossible.
  ExperimentSpec spec;
  spec.kind = ExperimentKind::sweep_attack;
  spec.base.params.beta = 0.0;
  spec.base.target_is_malicious = true;
  spec.iterations = 400;
  spec.sweep_grid = {0.0};
  spec.companion = {0.2};
  const auto series = run_attack_sweep(spec);
  CHECK(series.front().rows.front().pct_correct == 0.0);
}

TEST_CASE("uncertainty comparison pairs arms over the same worlds") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::compare_uncertainty;
  spec.base.n = 12;
  spec.base.n_th = 3;
  spec.iterations = 60;
  spec.sweep_grid = {0.1, 0.3};
  const auto series = run_uncertainty_comparison(spec);
  REQUIRE(series.size() == 2);
  CHECK(series[0].label == "aware");
  CHECK(series[1].label == "certain");
  REQUIRE(series[0].rows.size() == 2);
  REQUIRE(series[1].rows.size() == 2);
  // Same seeds row by row: the arms face identical sampled games.
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(series[0].rows[i].seed == series[1].rows[i].seed);
    CHECK(series[0].rows[i].parameter_value == series[1].rows[i].parameter_value);
  }
}

TEST_CASE("single run reports the attack probability as its parameter value") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::single_run;
  spec.base.n = 10;
  spec.base.n_th = 2;
  spec.iterations = 25;
  const auto series = run_experiment(spec);
  REQUIRE(series.size() == 1);
  REQUIRE(series[0].rows.size() == 1);
  CHECK(series[0].rows[0].parameter_value == spec.base.q_attack);
  CHECK(series[0].label.empty());
}
