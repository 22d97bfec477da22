#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "caal/mealy.hpp"
#include "caal/random.hpp"

namespace caal {

enum class NoiseKind { None, Input, Output };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double level = 0.0;  // per-symbol replacement probability
  std::uint64_t seed = 0;
};

/// Effective per-symbol corruption rate under uniform replacement over the
/// full alphabet (the draw may return the original symbol).
inline double effective_corruption(double level, std::size_t alphabet_size) {
  return level * static_cast<double>(alphabet_size - 1) / static_cast<double>(alphabet_size);
}

struct SystemStats {
  std::uint64_t tests = 0;
  std::uint64_t resets = 0;
  std::uint64_t symbols = 0;
};

/// Thrown by System::execute once the symbol budget is spent. The test that
/// crosses the budget still runs, so the overshoot is below one word.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("symbol budget exhausted") {}
};

/// A system under learning reachable only through tests. Every test resets
/// the system, feeds the word, and reports (intended input, observed output).
class System {
 public:
  virtual ~System() = default;

  Observation execute(WordView input);

  const SystemStats& stats() const { return stats_; }
  void set_symbol_budget(std::uint64_t budget) { budget_ = budget; }
  std::uint64_t symbol_budget() const { return budget_; }

 protected:
  // `test_index` counts tests executed before this one.
  virtual Word respond(WordView input, std::uint64_t test_index) = 0;

 private:
  SystemStats stats_;
  std::uint64_t budget_ = std::numeric_limits<std::uint64_t>::max();
};

struct Mutation {
  std::uint64_t at_test;  // tests with index >= at_test see `machine`
  MealyMachine machine;
};

/// Hidden Mealy machine behind an input or output noise channel, with an
/// optional mutation schedule.
class SimulatedSystem final : public System {
 public:
  SimulatedSystem(MealyMachine target, NoiseSpec noise, std::vector<Mutation> schedule = {});

  const MealyMachine& target_at(std::uint64_t test_index) const;
  const MealyMachine& final_target() const;

 protected:
  Word respond(WordView input, std::uint64_t test_index) override;

 private:
  MealyMachine target_;
  NoiseSpec noise_;
  std::vector<Mutation> schedule_;
  Rng rng_;
};

struct RepeatsPolicy {
  std::uint32_t min_repeats = 1;
  std::uint32_t max_repeats = 1;
  double threshold = 0.8;

  void validate() const;
  friend bool operator==(const RepeatsPolicy&, const RepeatsPolicy&) = default;
};

/// Majority-voted test. Runs min_repeats times, then one more at a time until
/// some output word reaches the agreement threshold or max_repeats is hit;
/// returns the plurality answer (ties: lexicographically least output word).
Observation execute_repeated(System& system, WordView input, const RepeatsPolicy& policy);

}  // namespace caal
