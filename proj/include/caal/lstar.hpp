#pragma once

#include <map>
#include <optional>
#include <vector>

#include "caal/learner.hpp"

namespace caal {

/// Mealy L* with Rivest-Schapire counterexample handling. Columns start as the
/// single input symbols; cells hold the output word of the column suffix.
/// Counterexamples only ever add one suffix, so the table stays consistent and
/// closedness is the only condition to restore.
class LStarRS final : public Learner {
 public:
  using Learner::Learner;

  void start() override;
  MealyMachine next_hypothesis() override;
  void consume_counterexample(const Observation& cex) override;

  std::size_t num_rows() const { return short_prefixes_.size(); }
  const std::vector<Word>& suffixes() const { return suffixes_; }

 private:
  using Row = std::vector<Word>;

  const Row& row(const Word& prefix);
  void close();

  std::vector<Word> short_prefixes_;  // S; index = hypothesis state
  std::vector<Word> suffixes_;        // E
  std::map<Word, Row> rows_;          // rows for S and S.I, filled lazily per column
  std::optional<MealyMachine> hypothesis_;
};

}  // namespace caal
