#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "caal/ceal.hpp"
#include "caal/eq_testing.hpp"
#include "caal/learner.hpp"
#include "caal/observation_tree.hpp"
#include "caal/reviser.hpp"
#include "caal/system.hpp"

namespace caal {

enum class Framework { Mat, Ceal };

struct MutationSpec {
  std::uint64_t at_test = 0;
  std::filesystem::path target;
  friend bool operator==(const MutationSpec&, const MutationSpec&) = default;
};

/// One experiment cell. Per-run seed is `base_seed + run index`; the noise
/// channel and the sampler draw from independent streams of that seed.
struct ExperimentConfig {
  std::string id;
  std::filesystem::path target;
  Framework framework = Framework::Ceal;
  LearnerKind learner = LearnerKind::LStarRS;
  UpdateStrategy update = UpdateStrategy::MostRecent;
  Selection selection = Selection::MostFrequent;
  RepeatsPolicy repeats;
  NoiseKind noise = NoiseKind::None;
  double noise_level = 0.0;
  double infix_length = 3.0;
  std::uint32_t extra_states = 2;
  std::uint64_t survive_budget = 2000;
  std::uint64_t symbol_budget = 10'000'000;
  std::uint32_t runs = 20;
  std::uint64_t base_seed = 0;
  std::optional<MutationSpec> mutation;

  void validate() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct RunRecord {
  std::string experiment_id;
  std::uint32_t run_id = 0;
  std::string framework;
  std::string learner;
  std::string target;
  std::string noise_kind;
  double noise_level = 0.0;
  std::uint32_t min_repeats = 0;
  std::uint32_t max_repeats = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::string outcome;
  std::uint64_t symbols = 0;
  std::uint64_t tests = 0;
  std::uint64_t resets = 0;
  std::uint64_t eq_symbols = 0;
  double eq_fraction = 0.0;
  std::uint64_t restarts = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t distinct_hypotheses = 0;
  std::uint64_t wall_ms = 0;
};

const char* to_string(Framework f);
const char* to_string(NoiseKind k);
const char* to_string(UpdateStrategy s);
const char* to_string(Selection s);
Framework parse_framework(const std::string& s);
NoiseKind parse_noise_kind(const std::string& s);
UpdateStrategy parse_update(const std::string& s);
Selection parse_selection(const std::string& s);

/// Everything one run needs, with machines already loaded.
struct RunSetup {
  MealyMachine target;
  std::vector<Mutation> schedule;
};

RunSetup load_setup(const ExperimentConfig& cfg);

/// One seeded run. `detail`, when given, receives the framework's result.
RunRecord run_single(const ExperimentConfig& cfg, const RunSetup& setup, std::uint32_t run_index,
                     const EventSink& sink = {}, LearnResult* detail = nullptr);

/// Worker count from CAAL_WORKERS, else the hardware concurrency.
unsigned default_workers();

/// All runs of all cells, in (cell, run) order. Targets are loaded before any
/// run starts; an unreadable target is a ConfigError.
std::vector<RunRecord> run_grid(const std::vector<ExperimentConfig>& cells, unsigned workers);
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, unsigned workers = 1);

void write_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records);

/// INI file, one section per cell; the section name is the experiment id.
/// Relative target paths are resolved against the file's directory.
std::vector<ExperimentConfig> load_config(const std::filesystem::path& path);
std::vector<ExperimentConfig> parse_config(std::istream& is, const std::filesystem::path& base_dir = {});
void save_config(std::ostream& os, const std::vector<ExperimentConfig>& cells);

}  // namespace caal
