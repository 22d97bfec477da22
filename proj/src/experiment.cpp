#include "caal/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "caal/dot.hpp"
#include "caal/errors.hpp"
#include "caal/mat.hpp"

namespace caal {

const char* to_string(Framework f) { return f == Framework::Mat ? "mat" : "ceal"; }

const char* to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::None: return "none";
    case NoiseKind::Input: return "input";
    case NoiseKind::Output: return "output";
  }
  return "none";
}

const char* to_string(UpdateStrategy s) {
  return s == UpdateStrategy::MostRecent ? "most_recent" : "most_frequent";
}

const char* to_string(Selection s) { return s == Selection::MostRecent ? "most_recent" : "most_frequent"; }

Framework parse_framework(const std::string& s) {
  if (s == "mat") return Framework::Mat;
  if (s == "ceal") return Framework::Ceal;
  throw ConfigError("unsupported framework: " + s);
}

NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "none") return NoiseKind::None;
  if (s == "input") return NoiseKind::Input;
  if (s == "output") return NoiseKind::Output;
  throw ConfigError("unsupported noise kind: " + s);
}

UpdateStrategy parse_update(const std::string& s) {
  if (s == "most_recent") return UpdateStrategy::MostRecent;
  if (s == "most_frequent") return UpdateStrategy::MostFrequent;
  throw ConfigError("unsupported update strategy: " + s);
}

Selection parse_selection(const std::string& s) {
  if (s == "most_recent") return Selection::MostRecent;
  if (s == "most_frequent") return Selection::MostFrequent;
  throw ConfigError("unsupported selection strategy: " + s);
}

void ExperimentConfig::validate() const {
  repeats.validate();
  if (noise_level < 0.0 || noise_level > 1.0) throw ConfigError("noise_level must lie in [0, 1]");
  if (noise == NoiseKind::None && noise_level != 0.0) throw ConfigError("noise_level set without a noise kind");
  if (!(infix_length >= 0.0) || infix_length > 1e6) throw ConfigError("infix_length must be finite and >= 0");
  if (survive_budget == 0) throw ConfigError("survive_budget must be positive");
  if (runs == 0) throw ConfigError("runs must be positive");
}

RunSetup load_setup(const ExperimentConfig& cfg) {
  cfg.validate();
  RunSetup setup{load_dot(cfg.target), {}};
  if (cfg.mutation) {
    MealyMachine mutated = load_dot(cfg.mutation->target);
    if (!(mutated.inputs() == setup.target.inputs()) || !(mutated.outputs() == setup.target.outputs()))
      throw ConfigError("mutation target alphabets differ from the target's");
    setup.schedule.push_back(Mutation{cfg.mutation->at_test, std::move(mutated)});
  }
  return setup;
}

RunRecord run_single(const ExperimentConfig& cfg, const RunSetup& setup, std::uint32_t run_index,
                     const EventSink& sink, LearnResult* detail) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = cfg.base_seed + run_index;

  SimulatedSystem system(setup.target, NoiseSpec{cfg.noise, cfg.noise_level, derive_seed(seed, 1)},
                         setup.schedule);
  system.set_symbol_budget(cfg.symbol_budget);
  const SamplerParams sampler{cfg.infix_length, cfg.extra_states, derive_seed(seed, 2)};
  const MealyMachine& target = setup.target;
  const LearnerFactory factory = learner_factory(cfg.learner, target.inputs(), target.outputs());

  LearnResult result;
  if (cfg.framework == Framework::Ceal) {
    Reviser reviser(ObservationTree(target.inputs(), target.outputs(), cfg.update), system,
                    ReviserConfig{cfg.repeats, sampler, cfg.survive_budget});
    reviser.set_event_sink(sink);
    result = run_ceal(factory, reviser, cfg.selection);
  } else {
    result = run_mat(factory, system, MatConfig{cfg.repeats, sampler, cfg.survive_budget}, sink);
  }

  RunRecord r;
  r.experiment_id = cfg.id;
  r.run_id = run_index;
  r.framework = to_string(cfg.framework);
  r.learner = to_string(cfg.learner);
  r.target = cfg.target.string();
  r.noise_kind = to_string(cfg.noise);
  r.noise_level = cfg.noise_level;
  r.min_repeats = cfg.repeats.min_repeats;
  r.max_repeats = cfg.repeats.max_repeats;
  r.seed = seed;
  r.success = result.outcome == RunOutcome::Survived && result.model &&
              !equivalent(*result.model, system.final_target());
  r.outcome = to_string(result.outcome);
  const SystemStats& stats = system.stats();
  r.symbols = stats.symbols;
  r.tests = stats.tests;
  r.resets = stats.resets;
  r.eq_symbols = result.eq_symbols;
  r.eq_fraction = stats.symbols ? static_cast<double>(result.eq_symbols) / static_cast<double>(stats.symbols) : 0.0;
  r.restarts = result.restarts;
  r.conflicts = result.conflicts;
  r.distinct_hypotheses = result.distinct_hypotheses;
  r.wall_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  if (detail) *detail = std::move(result);
  return r;
}

unsigned default_workers() {
  if (const char* env = std::getenv("CAAL_WORKERS")) {
    unsigned n = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0)
      throw ConfigError("CAAL_WORKERS must be a positive integer");
    return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RunRecord> run_grid(const std::vector<ExperimentConfig>& cells, unsigned workers) {
  std::vector<RunSetup> setups;
  setups.reserve(cells.size());
  for (const auto& cfg : cells) setups.push_back(load_setup(cfg));

  std::vector<std::pair<std::size_t, std::uint32_t>> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::uint32_t r = 0; r < cells[c].runs; ++r) jobs.emplace_back(c, r);

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();)
      records[j] = run_single(cells[jobs[j].first], setups[jobs[j].first], jobs[j].second);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
  }
  return records;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  return run_grid({cfg}, workers);
}

// ------------------------------------------------------------------ CSV

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt_double(double v, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << "experiment_id,run_id,framework,learner,target,noise_kind,noise_level,min_repeats,max_repeats,seed,"
        "success,outcome,symbols,tests,resets,eq_symbols,eq_fraction,restarts,conflicts,distinct_hypotheses,"
        "wall_ms\r\n";
  for (const RunRecord& r : records) {
    os << csv_field(r.experiment_id) << ',' << r.run_id << ',' << csv_field(r.framework) << ','
       << csv_field(r.learner) << ',' << csv_field(r.target) << ',' << csv_field(r.noise_kind) << ','
       << fmt_double(r.noise_level, 10) << ',' << r.min_repeats << ',' << r.max_repeats << ',' << r.seed << ','
       << (r.success ? 1 : 0) << ',' << csv_field(r.outcome) << ',' << r.symbols << ',' << r.tests << ','
       << r.resets << ',' << r.eq_symbols << ',' << std::fixed << std::setprecision(6) << r.eq_fraction
       << std::defaultfloat << ',' << r.restarts << ',' << r.conflicts << ',' << r.distinct_hypotheses << ','
       << r.wall_ms << "\r\n";
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  write_csv(os, records);
  if (!os) throw ConfigError("write failed: " + path.string());
}

// --------------------------------------------------------------- config

namespace {

namespace pt = boost::property_tree;

const std::set<std::string> kRequired = {"target", "framework", "learner", "update", "selection",
                                         "min_repeats", "max_repeats", "noise", "noise_level",
                                         "survive_budget", "seed"};
const std::set<std::string> kOptional = {"threshold", "infix_length", "extra_states", "symbol_budget",
                                         "runs", "mutation_at", "mutation_target"};

template <typename T>
T get(const pt::ptree& section, const std::string& cell, const std::string& key) {
  const std::string raw = section.get<std::string>(key);
  std::istringstream is(raw);
  T value{};
  if (!(is >> value) || !(is >> std::ws).eof() || (std::is_unsigned_v<T> && raw.find('-') != std::string::npos))
    throw ConfigError("[" + cell + "] " + key + ": invalid value '" + raw + "'");
  return value;
}

}  // namespace

std::vector<ExperimentConfig> parse_config(std::istream& is, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  std::vector<ExperimentConfig> cells;
  for (const auto& [name, section] : tree) {
    if (!section.data().empty()) throw ConfigError("key '" + name + "' outside of a section");
    for (const auto& [key, value] : section)
      if (!kRequired.contains(key) && !kOptional.contains(key))
        throw ConfigError("[" + name + "] unknown key: " + key);
    for (const auto& key : kRequired)
      if (!section.count(key)) throw ConfigError("[" + name + "] missing key: " + key);

    ExperimentConfig c;
    c.id = name;
    c.target = resolve(section.get<std::string>("target"));
    c.framework = parse_framework(section.get<std::string>("framework"));
    c.learner = parse_learner_kind(section.get<std::string>("learner"));
    c.update = parse_update(section.get<std::string>("update"));
    c.selection = parse_selection(section.get<std::string>("selection"));
    c.repeats.min_repeats = get<std::uint32_t>(section, name, "min_repeats");
    c.repeats.max_repeats = get<std::uint32_t>(section, name, "max_repeats");
    if (section.count("threshold")) c.repeats.threshold = get<double>(section, name, "threshold");
    c.noise = parse_noise_kind(section.get<std::string>("noise"));
    c.noise_level = get<double>(section, name, "noise_level");
    if (section.count("infix_length")) c.infix_length = get<double>(section, name, "infix_length");
    if (section.count("extra_states")) c.extra_states = get<std::uint32_t>(section, name, "extra_states");
    c.survive_budget = get<std::uint64_t>(section, name, "survive_budget");
    if (section.count("symbol_budget")) c.symbol_budget = get<std::uint64_t>(section, name, "symbol_budget");
    if (section.count("runs")) c.runs = get<std::uint32_t>(section, name, "runs");
    c.base_seed = get<std::uint64_t>(section, name, "seed");
    if (section.count("mutation_at") != section.count("mutation_target"))
      throw ConfigError("[" + name + "] mutation_at and mutation_target go together");
    if (section.count("mutation_at"))
      c.mutation = MutationSpec{get<std::uint64_t>(section, name, "mutation_at"),
                                resolve(section.get<std::string>("mutation_target"))};
    try {
      c.validate();
    } catch (const std::exception& e) {
      throw ConfigError("[" + name + "] " + e.what());
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

std::vector<ExperimentConfig> load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path.string());
  return parse_config(is, path.parent_path());
}

void save_config(std::ostream& os, const std::vector<ExperimentConfig>& cells) {
  for (const auto& c : cells) {
    os << '[' << c.id << "]\n"
       << "target = " << c.target.string() << '\n'
       << "framework = " << to_string(c.framework) << '\n'
       << "learner = " << to_string(c.learner) << '\n'
       << "update = " << to_string(c.update) << '\n'
       << "selection = " << to_string(c.selection) << '\n'
       << "min_repeats = " << c.repeats.min_repeats << '\n'
       << "max_repeats = " << c.repeats.max_repeats << '\n'
       << "threshold = " << fmt_double(c.repeats.threshold, 17) << '\n'
       << "noise = " << to_string(c.noise) << '\n'
       << "noise_level = " << fmt_double(c.noise_level, 17) << '\n'
       << "infix_length = " << fmt_double(c.infix_length, 17) << '\n'
       << "extra_states = " << c.extra_states << '\n'
       << "survive_budget = " << c.survive_budget << '\n'
       << "symbol_budget = " << c.symbol_budget << '\n'
       << "runs = " << c.runs << '\n'
       << "seed = " << c.base_seed << '\n';
    if (c.mutation)
      os << "mutation_at = " << c.mutation->at_test << '\n'
         << "mutation_target = " << c.mutation->target.string() << '\n';
    os << '\n';
  }
}

}  // namespace caal
