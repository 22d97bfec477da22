#pragma once

#include <optional>
#include <vector>

#include "caal/learner.hpp"

namespace caal {

/// Kearns-Vazirani for Mealy machines. Leaves of the discrimination tree are
/// hypothesis states (one access word each); inner nodes hold a suffix and
/// branch on the output word it produces. Sifting into a missing branch
/// discovers a new state.
class KearnsVazirani final : public Learner {
 public:
  using Learner::Learner;

  void start() override;
  MealyMachine next_hypothesis() override;
  void consume_counterexample(const Observation& cex) override;

  std::size_t num_states() const { return access_.size(); }

 private:
  struct Node {
    Word discriminator;                          // inner nodes only
    std::vector<std::pair<Word, std::size_t>> children;  // output word -> node
    std::optional<StateId> state;                // leaves only
  };

  StateId sift(const Word& word);
  StateId add_state(Word access, std::size_t leaf);

  std::vector<Node> nodes_;
  std::vector<Word> access_;
  std::vector<std::size_t> leaf_of_;  // state -> node
  std::optional<MealyMachine> hypothesis_;
};

}  // namespace caal
