#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "caal/errors.hpp"
#include "caal/experiment.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace testing;

namespace {

const std::filesystem::path data_dir(CAAL_DATA_DIR);

ExperimentConfig cell(Framework f = Framework::Ceal) {
  ExperimentConfig c;
  c.id = "t";
  c.target = data_dir / "targets" / "rand_05.dot";
  c.framework = f;
  c.repeats = RepeatsPolicy{1, 1, 0.8};
  c.survive_budget = 300;
  c.runs = 6;
  c.base_seed = 11;
  return c;
}

std::string csv(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  write_csv(os, records);
  return std::regex_replace(os.str(), std::regex(",[0-9]+\r\n"), ",_\r\n");  // drop wall_ms
}

const char* kIni = R"([mat-lstar]
target = targets/rand_05.dot
framework = mat
learner = lstar_rs
update = most_recent
selection = most_frequent
min_repeats = 5
max_repeats = 10
noise = output
noise_level = 0.01
survive_budget = 2000
seed = 7
)";

std::string ini_with(const std::string& extra) { return std::string(kIni) + extra; }

std::string config_error(const std::string& text) {
  std::istringstream is(text);
  try {
    parse_config(is, data_dir);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("empty record list gives a header-only CSV") {
  std::ostringstream os;
  write_csv(os, {});
  CHECK(os.str() ==
        "experiment_id,run_id,framework,learner,target,noise_kind,noise_level,min_repeats,max_repeats,seed,"
        "success,outcome,symbols,tests,resets,eq_symbols,eq_fraction,restarts,conflicts,distinct_hypotheses,"
        "wall_ms\r\n");
}

TEST_CASE("CSV fields are quoted when needed") {
  RunRecord r;
  r.experiment_id = "a,\"b\"";
  std::ostringstream os;
  write_csv(os, {r});
  CHECK(os.str().find("\r\n\"a,\"\"b\"\"\",0,") != std::string::npos);
}

TEST_CASE("config parsing") {
  std::istringstream is(kIni);
  const auto cells = parse_config(is, data_dir);
  REQUIRE(cells.size() == 1);
  const ExperimentConfig& c = cells[0];
  CHECK(c.id == "mat-lstar");
  CHECK(c.target == data_dir / "targets" / "rand_05.dot");
  CHECK(c.framework == Framework::Mat);
  CHECK(c.repeats.min_repeats == 5);
  CHECK(c.noise == NoiseKind::Output);
  CHECK(c.noise_level == doctest::Approx(0.01));
  CHECK(c.runs == 20);

  std::ostringstream saved;
  save_config(saved, cells);
  std::istringstream again(saved.str());
  CHECK(parse_config(again) == cells);

  CHECK(config_error(std::regex_replace(kIni, std::regex("lstar_rs\n"), "ttt\n")).find("unsupported learner") !=
        std::string::npos);
  CHECK(config_error(ini_with("colour = red\n")).find("unknown key: colour") != std::string::npos);
  CHECK(config_error(std::regex_replace(kIni, std::regex("seed = 7\n"), "")).find("missing key: seed") !=
        std::string::npos);
  CHECK(config_error(ini_with("runs = -1\n")).find("invalid value") != std::string::npos);
  CHECK(config_error(ini_with("mutation_at = 4\n")).find("go together") != std::string::npos);
  CHECK_FALSE(config_error(std::regex_replace(kIni, std::regex("max_repeats = 10"), "max_repeats = 3")).empty());
}

TEST_CASE("load_config resolves paths against the file") {
  const auto dir = std::filesystem::temp_directory_path() / "caal_cfg_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "x.ini");
    os << std::regex_replace(kIni, std::regex("targets/rand_05.dot"), "sub/t.dot");
  }
  CHECK(load_config(dir / "x.ini")[0].target == dir / "sub" / "t.dot");
  CHECK_THROWS_AS(run_experiment(load_config(dir / "x.ini")[0]), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("tiny symbol budget times out every run") {
  for (Framework f : {Framework::Mat, Framework::Ceal}) {
    ExperimentConfig c = cell(f);
    c.symbol_budget = 10;
    const auto records = run_experiment(c);
    REQUIRE(records.size() == 6);
    for (const RunRecord& r : records) {
      CHECK_FALSE(r.success);
      CHECK(r.outcome == "timeout");
      CHECK(r.symbols < 10 + 64);
    }
  }
}

TEST_CASE("noise-free runs all succeed") {
  for (Framework f : {Framework::Mat, Framework::Ceal}) {
    ExperimentConfig c = cell(f);
    c.runs = 20;
    for (const RunRecord& r : run_experiment(c)) {
      CHECK(r.success);
      CHECK(r.outcome == "survived");
      CHECK(r.restarts == 0);
      CHECK(r.eq_fraction >= 0.0);
      CHECK(r.eq_fraction <= 1.0);
    }
  }
}

TEST_CASE("runs are reproducible and independent of the worker count") {
  ExperimentConfig c = cell(Framework::Ceal);
  c.noise = NoiseKind::Output;
  c.noise_level = 0.05;
  c.repeats = RepeatsPolicy{3, 6, 0.8};
  ExperimentConfig m = c;
  m.id = "m";
  m.framework = Framework::Mat;
  const std::string one = csv(run_grid({c, m}, 1));
  CHECK(one == csv(run_grid({c, m}, 1)));
  CHECK(one == csv(run_grid({c, m}, 4)));
  const auto records = run_grid({c, m}, 3);
  for (std::size_t k = 0; k < records.size(); ++k) {
    CHECK(records[k].experiment_id == (k < 6 ? "t" : "m"));
    CHECK(records[k].run_id == k % 6);
    CHECK(records[k].seed == 11 + k % 6);
  }
}

TEST_CASE("worker count from the environment") {
  setenv("CAAL_WORKERS", "3", 1);
  CHECK(default_workers() == 3);
  setenv("CAAL_WORKERS", "0", 1);
  CHECK_THROWS_AS(default_workers(), ConfigError);
  setenv("CAAL_WORKERS", "2x", 1);
  CHECK_THROWS_AS(default_workers(), ConfigError);
  unsetenv("CAAL_WORKERS");
  CHECK(default_workers() >= 1);
}
