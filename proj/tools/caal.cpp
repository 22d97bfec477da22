#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "caal/dot.hpp"
#include "caal/errors.hpp"
#include "caal/experiment.hpp"

using namespace caal;

namespace {

struct RunOptions {
  std::string id = "cli";
  std::string target;
  std::string framework = "ceal";
  std::string learner = "lstar_rs";
  std::string update = "most_recent";
  std::string selection = "most_frequent";
  std::uint32_t min_repeats = 1;
  std::uint32_t max_repeats = 1;
  double threshold = 0.8;
  std::string noise = "none";
  double noise_level = 0.0;
  double infix_length = 3.0;
  std::uint32_t extra_states = 2;
  std::uint64_t survive_budget = 2000;
  std::uint64_t symbol_budget = 10'000'000;
  std::uint32_t runs = 20;
  std::uint64_t seed = 0;
  std::uint64_t mutation_at = 0;
  std::string mutation_target;
  std::string csv;
  std::string events;
};

ExperimentConfig to_config(const RunOptions& o) {
  ExperimentConfig c;
  c.id = o.id;
  c.target = o.target;
  c.framework = parse_framework(o.framework);
  c.learner = parse_learner_kind(o.learner);
  c.update = parse_update(o.update);
  c.selection = parse_selection(o.selection);
  c.repeats = RepeatsPolicy{o.min_repeats, o.max_repeats, o.threshold};
  c.noise = parse_noise_kind(o.noise);
  c.noise_level = o.noise_level;
  c.infix_length = o.infix_length;
  c.extra_states = o.extra_states;
  c.survive_budget = o.survive_budget;
  c.symbol_budget = o.symbol_budget;
  c.runs = o.runs;
  c.base_seed = o.seed;
  if (!o.mutation_target.empty()) c.mutation = MutationSpec{o.mutation_at, o.mutation_target};
  c.validate();
  return c;
}

void emit_csv(const std::string& path, const std::vector<RunRecord>& records) {
  if (path.empty() || path == "-")
    write_csv(std::cout, records);
  else
    write_csv(std::filesystem::path(path), records);
}

int cmd_run(const RunOptions& o) {
  const ExperimentConfig cfg = to_config(o);
  if (o.events.empty()) {
    emit_csv(o.csv, run_experiment(cfg, default_workers()));
    return 0;
  }
  // The event log needs a single writer, so runs go sequentially.
  std::ofstream log(o.events);
  if (!log) throw ConfigError("cannot write " + o.events);
  const RunSetup setup = load_setup(cfg);
  std::vector<RunRecord> records;
  for (std::uint32_t r = 0; r < cfg.runs; ++r) {
    auto sink = [&log, r](const Event& e) { log << "{\"run\":" << r << ',' << to_json_line(e).substr(1) << '\n'; };
    records.push_back(run_single(cfg, setup, r, sink));
  }
  emit_csv(o.csv, records);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conflict-aware active automata learning"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Run one experiment cell and print its CSV");
  run->add_option("--target", ro.target, "Target machine (DOT)")->required()->check(CLI::ExistingFile);
  run->add_option("--id", ro.id, "Experiment id")->capture_default_str();
  run->add_option("--framework", ro.framework, "mat | ceal")->capture_default_str();
  run->add_option("--learner", ro.learner, "lstar_rs | kv")->capture_default_str();
  run->add_option("--update", ro.update, "most_recent | most_frequent")->capture_default_str();
  run->add_option("--selection", ro.selection, "most_recent | most_frequent")->capture_default_str();
  run->add_option("--min-repeats", ro.min_repeats)->capture_default_str();
  run->add_option("--max-repeats", ro.max_repeats)->capture_default_str();
  run->add_option("--threshold", ro.threshold, "Agreement threshold")->capture_default_str();
  run->add_option("--noise", ro.noise, "none | input | output")->capture_default_str();
  run->add_option("--noise-level", ro.noise_level)->capture_default_str();
  run->add_option("--infix-length", ro.infix_length)->capture_default_str();
  run->add_option("--extra-states", ro.extra_states)->capture_default_str();
  run->add_option("--survive-budget", ro.survive_budget, "Agreeing tests a hypothesis needs to be accepted")
      ->capture_default_str();
  run->add_option("--symbol-budget", ro.symbol_budget)->capture_default_str();
  run->add_option("--runs", ro.runs)->capture_default_str();
  run->add_option("--seed", ro.seed, "Base seed")->capture_default_str();
  run->add_option("--mutation-at", ro.mutation_at, "Test index from which the mutated target answers");
  run->add_option("--mutation-target", ro.mutation_target, "Mutated target (DOT)")->check(CLI::ExistingFile);
  run->add_option("--csv", ro.csv, "Output CSV (default stdout)");
  run->add_option("--events", ro.events, "Event log (JSON lines)");

  std::string bench_config, bench_csv;
  auto* bench = app.add_subcommand("bench", "Run every cell of a config file");
  bench->add_option("config", bench_config)->required()->check(CLI::ExistingFile);
  bench->add_option("--csv", bench_csv, "Output CSV (default stdout)");

  std::string model_path, target_path;
  auto* verify = app.add_subcommand("verify", "Exit 0 iff the two machines are equivalent");
  verify->add_option("model", model_path)->required();
  verify->add_option("target", target_path)->required();

  std::size_t states = 0, inputs = 0, outputs = 0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Random minimal machine as DOT");
  gen->add_option("--states", states)->required()->check(CLI::PositiveNumber);
  gen->add_option("--inputs", inputs)->required()->check(CLI::PositiveNumber);
  gen->add_option("--outputs", outputs)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(ro);
    if (*bench) {
      emit_csv(bench_csv, run_grid(load_config(bench_config), default_workers()));
      return 0;
    }
    if (*verify) {
      const MealyMachine model = load_dot(model_path);
      const MealyMachine target = load_dot(target_path);
      if (auto cex = equivalent(model, target)) {
        std::cout << "not equivalent: " << model.inputs().render(cex->input) << " -> "
                  << model.outputs().render(cex->output) << '\n';
        return 1;
      }
      std::cout << "equivalent\n";
      return 0;
    }
    if (*gen) {
      auto names = [](char prefix, std::size_t n) {
        std::vector<std::string> v;
        for (std::size_t k = 0; k < n; ++k) v.push_back(std::string(1, prefix) + std::to_string(k));
        return Alphabet(std::move(v));
      };
      std::cout << write_dot(random_mealy(states, names('i', inputs), names('o', outputs), gen_seed));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
