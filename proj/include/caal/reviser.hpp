#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "caal/eq_testing.hpp"
#include "caal/mealy.hpp"
#include "caal/observation_tree.hpp"
#include "caal/random.hpp"
#include "caal/system.hpp"

namespace caal {

// Signal that the learner must be rebuilt from the tree.
struct Restart {
  friend bool operator==(const Restart&, const Restart&) = default;
};

// The hypothesis agreed with every test of the requested batch.
struct Survived {
  friend bool operator==(const Survived&, const Survived&) = default;
};

using RevisorAnswer = std::variant<Word, Restart>;
using EqAnswer = std::variant<Observation, Restart, Survived>;

// ----------------------------------------------------------------- events

enum class EventKind { MqTest, EqTest, Restart, Hypothesis };

const char* to_string(EventKind kind);

/// One record of the run's event log. `test_index` is the number of System
/// tests issued before the event, `symbols` the cumulative symbol count.
struct Event {
  EventKind kind;
  std::uint64_t test_index;
  std::size_t word_length;
  std::uint64_t symbols;
  WordView word;
};

using EventSink = std::function<void(const Event&)>;

/// {"kind":"mq_test","test_index":12,"word_length":5,"symbols":123}
std::string to_json_line(const Event& e);

// ---------------------------------------------------------------- reviser

struct ReviserConfig {
  RepeatsPolicy repeats;
  SamplerParams sampler;
  std::uint64_t survive_budget = 2000;
};

struct ReviserCounters {
  std::uint64_t system_calls = 0;      // repeated-channel calls
  std::uint64_t integrated = 0;        // update() calls made by apply()
  std::uint64_t conflicts = 0;         // updates reporting a conflict
  std::uint64_t restarts = 0;          // Restart answers returned
  std::uint64_t mq_cache_hits = 0;
  std::uint64_t mq_system_tests = 0;
  std::uint64_t eq_system_tests = 0;
  std::uint64_t mq_symbols = 0;
  std::uint64_t eq_symbols = 0;
};

/// Owns the observation tree and is the only component talking to the
/// system. Towards the learner it acts as a teacher (mq/eq); towards the
/// system as a tester. Every system answer is integrated through apply().
class Reviser {
 public:
  Reviser(ObservationTree tree, System& system, ReviserConfig config);

  RevisorAnswer apply(const Observation& obs);
  RevisorAnswer read(WordView input);
  std::optional<Observation> check(const MealyMachine& h) const;
  // Up to `limit` tests (default: the survive budget); Survived when all agree.
  EqAnswer test(const MealyMachine& h, std::uint64_t limit = 0);
  // Agreeing tests issued by the latest test() call.
  std::uint64_t last_passed() const { return last_passed_; }

  RevisorAnswer mq(WordView input) { return read(input); }
  EqAnswer eq(const MealyMachine& h);

  const ObservationTree& tree() const { return tree_; }
  const ReviserCounters& counters() const { return counters_; }
  const System& system() const { return system_; }
  const ReviserConfig& config() const { return config_; }

  void set_event_sink(EventSink sink) { sink_ = std::move(sink); }
  void emit(EventKind kind, WordView word = {}) const;

 private:
  Observation query_system(WordView input, std::uint64_t& symbol_counter);
  // Longest prefix of `input` in the tree's language, with its outputs.
  Observation believed(WordView input) const;

  ObservationTree tree_;
  System& system_;
  ReviserConfig config_;
  Rng sampler_rng_;
  ReviserCounters counters_;
  std::uint64_t last_passed_ = 0;
  EventSink sink_;
};

}  // namespace caal
