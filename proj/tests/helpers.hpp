#pragma once

#include <string>
#include <vector>

#include "caal/mealy.hpp"
#include "caal/system.hpp"

namespace testing {

using namespace caal;

// One character per symbol.
inline Word w(const Alphabet& alpha, const std::string& s) {
  Word out;
  for (char c : s) out.push_back(alpha.index(std::string(1, c)));
  return out;
}

inline Observation obs(const Alphabet& in, const Alphabet& out, const std::string& i, const std::string& o) {
  return Observation{w(in, i), w(out, o)};
}

inline std::string str(const Alphabet& alpha, const Word& word) { return alpha.render(word, ""); }

// q0 -a/x-> q1 -a/y-> q0
inline MealyMachine toggle() {
  return MealyMachine(Alphabet({"a"}), Alphabet({"x", "y"}), 2, 0, {1, 0}, {0, 1});
}

// Replays scripted output words, one per test, then repeats the last. Each
// answer is cut or padded (with its last symbol) to the input length.
class ScriptedSystem final : public System {
 public:
  explicit ScriptedSystem(std::vector<Word> answers) : answers_(std::move(answers)) {}

 protected:
  Word respond(WordView input, std::uint64_t test_index) override {
    Word out = answers_[std::min<std::size_t>(test_index, answers_.size() - 1)];
    out.resize(input.size(), out.empty() ? Symbol{0} : out.back());
    return out;
  }

 private:
  std::vector<Word> answers_;
};

}  // namespace testing
