#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "caal/learner.hpp"
#include "caal/mealy.hpp"
#include "caal/reviser.hpp"

namespace caal {

enum class Selection { MostRecent, MostFrequent };

/// Hypotheses seen during a run, grouped by canonical form.
class HypothesisLog {
 public:
  struct Entry {
    std::string fingerprint;
    std::uint64_t count = 0;
    std::uint64_t last = 0;      // index of the latest occurrence
    std::uint64_t survived = 0;  // agreeing system tests over all occurrences
    MealyMachine model;      // canonical representative
  };

  // Returns the entry index of h's canonical form.
  std::size_t record(const MealyMachine& h);
  void add_survived(std::size_t entry, std::uint64_t tests) { entries_[entry].survived += tests; }

  const std::vector<Entry>& entries() const { return entries_; }
  std::uint64_t total() const { return total_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::uint64_t total_ = 0;
};

/// MostRecent: latest entry. MostFrequent: highest count, ties to the later
/// last occurrence. nullopt for an empty log.
std::optional<std::size_t> elect(const HypothesisLog& log, Selection selection);

enum class RunOutcome { Survived, Timeout, NoHypothesis, CacheConflict, Inconsistency };

const char* to_string(RunOutcome outcome);

struct LearnResult {
  RunOutcome outcome = RunOutcome::NoHypothesis;
  std::optional<MealyMachine> model;  // elected (C3AL) or last (MAT) hypothesis
  std::uint64_t hypotheses = 0;
  std::uint64_t distinct_hypotheses = 0;
  std::uint64_t restarts = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t eq_symbols = 0;
};

/// C3AL outer loop. Hypotheses that disagree with the tree are answered from
/// the tree alone and not logged; only hypotheses that reach system testing
/// enter the election. Restart rebuilds the learner from the factory.
LearnResult run_ceal(const LearnerFactory& factory, Reviser& reviser, Selection selection);

}  // namespace caal
