#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace caal {

using Symbol = std::uint32_t;
using StateId = std::uint32_t;

// Words are stored as index sequences into an Alphabet.
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

/// Ordered, duplicate-free symbol table. Symbols are kept in lexicographic
/// order, so index order coincides with the sorted alphabet order used for
/// canonical numbering and tie-breaking. Copies share storage.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_ ? symbols_->size() : 0; }
  bool empty() const { return size() == 0; }

  const std::string& name(Symbol s) const;
  std::optional<Symbol> find(std::string_view name) const;
  Symbol index(std::string_view name) const;  // throws InputDomainError

  const std::vector<std::string>& symbols() const;

  Word encode(std::span<const std::string> names) const;
  std::string render(WordView word, std::string_view sep = " ") const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_ || a.symbols() == b.symbols();
  }

 private:
  std::shared_ptr<const std::vector<std::string>> symbols_;
};

struct Observation {
  Word input;
  Word output;

  friend bool operator==(const Observation&, const Observation&) = default;
  friend auto operator<=>(const Observation&, const Observation&) = default;
};

/// Complete deterministic Mealy machine with dense state ids. Immutable after
/// construction; the constructor checks completeness and range invariants.
class MealyMachine {
 public:
  MealyMachine(Alphabet inputs, Alphabet outputs, std::size_t num_states, StateId initial,
               std::vector<StateId> transitions, std::vector<Symbol> outputs_table);

  std::size_t num_states() const { return num_states_; }
  StateId initial() const { return initial_; }
  const Alphabet& inputs() const { return inputs_; }
  const Alphabet& outputs() const { return outputs_; }

  StateId next(StateId q, Symbol a) const { return delta_[q * inputs_.size() + a]; }
  Symbol output(StateId q, Symbol a) const { return lambda_[q * inputs_.size() + a]; }

  const std::vector<StateId>& transition_table() const { return delta_; }
  const std::vector<Symbol>& output_table() const { return lambda_; }

  friend bool operator==(const MealyMachine&, const MealyMachine&) = default;

 private:
  Alphabet inputs_;
  Alphabet outputs_;
  std::size_t num_states_;
  StateId initial_;
  std::vector<StateId> delta_;   // row-major: state * |I| + input
  std::vector<Symbol> lambda_;
};

/// Output word produced from `from` (default: initial state). Throws
/// InputDomainError on a symbol outside the input alphabet.
Word run_word(const MealyMachine& m, WordView input);
Word run_word_from(const MealyMachine& m, StateId from, WordView input);

/// State reached after reading `input` from the initial state.
StateId reach(const MealyMachine& m, WordView input);

/// Shortest (then lexicographically least) input word on which the machines
/// disagree, paired with m1's output; nullopt when language-equivalent.
/// Outputs are compared by symbol name, so output alphabets may differ.
/// Throws ConfigError when the input alphabets differ.
std::optional<Observation> equivalent(const MealyMachine& m1, const MealyMachine& m2);

/// Unique minimal equivalent machine, states numbered in breadth-first
/// discovery order over the sorted input alphabet.
MealyMachine minimize_canonical(const MealyMachine& m);

/// Stable textual form of the canonical machine; equal iff equivalent (given
/// identical alphabets).
std::string fingerprint(const MealyMachine& m);

/// Random machine, connected from the initial state and minimal. Deterministic
/// in `seed`. Throws GenerationError after 1000 non-minimal draws.
MealyMachine random_mealy(std::size_t num_states, const Alphabet& inputs, const Alphabet& outputs,
                          std::uint64_t seed);

/// Result of partition refinement over the reachable part of a machine.
struct Refinement {
  std::vector<std::int64_t> block;   // block per state, -1 if unreachable
  std::size_t num_blocks = 0;
  std::vector<Word> separators;      // one word per split, |separators| <= num_blocks - 1
};

/// Splitting-tree refinement: every split is justified by a single word, so
/// `separators` distinguishes every pair of inequivalent reachable states.
Refinement refine(const MealyMachine& m);

}  // namespace caal
