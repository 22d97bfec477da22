#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "caal/mealy.hpp"
#include "caal/reviser.hpp"

namespace caal {

/// The learner's view of its teacher. Under C3AL both capabilities are backed
/// by a Reviser; under MAT by a cache and the system directly.
struct LearnerOracle {
  std::function<RevisorAnswer(WordView)> mq;
  std::function<EqAnswer(const MealyMachine&)> eq;
};

/// Unwinds a learner when its teacher answers Restart. Learners never catch it.
class RestartSignal : public std::exception {
 public:
  const char* what() const noexcept override { return "learner restart requested"; }
};

/// Learner-side contradiction (e.g. a counterexample that does not refute the
/// hypothesis under the teacher's current answers).
class LearnerInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LearnerKind { LStarRS, KV };

LearnerKind parse_learner_kind(const std::string& name);  // throws ConfigError("unsupported learner: ...")
const char* to_string(LearnerKind kind);

/// Classic MAT learner driven one hypothesis at a time. A learner stores only
/// its own data structure; every answer comes through the oracle.
class Learner {
 public:
  Learner(Alphabet inputs, Alphabet outputs, const LearnerOracle& oracle)
      : inputs_(std::move(inputs)), outputs_(std::move(outputs)), oracle_(oracle) {}
  virtual ~Learner() = default;

  /// Back to the freshly constructed state.
  virtual void start() = 0;
  virtual MealyMachine next_hypothesis() = 0;
  virtual void consume_counterexample(const Observation& cex) = 0;

  void restart() { start(); }

 protected:
  // Membership query; throws RestartSignal on a Restart answer.
  Word ask(WordView input) const;
  // Output suffix of `prefix . suffix` corresponding to `suffix`.
  Word ask_suffix(const Word& prefix, WordView suffix) const;

  /// Rivest-Schapire decomposition: index i such that replacing the prefix of
  /// length i by its access word changes the outcome but doing so for length
  /// i + 1 does not. `access[q]` is the access word of hypothesis state q.
  std::size_t breakpoint(const MealyMachine& h, const std::vector<Word>& access, const Observation& cex) const;

  Alphabet inputs_;
  Alphabet outputs_;

 private:
  const LearnerOracle& oracle_;
};

using LearnerFactory = std::function<std::unique_ptr<Learner>(const LearnerOracle&)>;

std::unique_ptr<Learner> make_learner(LearnerKind kind, const Alphabet& inputs, const Alphabet& outputs,
                                      const LearnerOracle& oracle);

LearnerFactory learner_factory(LearnerKind kind, Alphabet inputs, Alphabet outputs);

}  // namespace caal
