#include "caal/learner.hpp"

#include "caal/errors.hpp"
#include "caal/kv.hpp"
#include "caal/lstar.hpp"

namespace caal {

LearnerKind parse_learner_kind(const std::string& name) {
  if (name == "lstar_rs") return LearnerKind::LStarRS;
  if (name == "kv") return LearnerKind::KV;
  throw ConfigError("unsupported learner: " + name);
}

const char* to_string(LearnerKind kind) { return kind == LearnerKind::LStarRS ? "lstar_rs" : "kv"; }

Word Learner::ask(WordView input) const {
  RevisorAnswer answer = oracle_.mq(input);
  if (std::holds_alternative<Restart>(answer)) throw RestartSignal{};
  Word out = std::move(std::get<Word>(answer));
  if (out.size() != input.size()) throw ContractViolation("membership answer has the wrong length");
  return out;
}

Word Learner::ask_suffix(const Word& prefix, WordView suffix) const {
  Word w = prefix;
  w.insert(w.end(), suffix.begin(), suffix.end());
  Word out = ask(w);
  return Word(out.end() - static_cast<std::ptrdiff_t>(suffix.size()), out.end());
}

std::size_t Learner::breakpoint(const MealyMachine& h, const std::vector<Word>& access,
                                const Observation& cex) const {
  const Word& w = cex.input;
  const std::size_t m = w.size();
  // agrees(i): access(h(w[:i])) . w[i:] is answered as h predicts on w[i:].
  // agrees(m) always holds; agrees(0) must fail for a genuine counterexample.
  auto agrees = [&](std::size_t i) {
    const StateId q = reach(h, WordView(w).first(i));
    const WordView rest = WordView(w).subspan(i);
    return ask_suffix(access[q], rest) == run_word_from(h, q, rest);
  };
  if (m == 0 || agrees(0)) throw LearnerInconsistency("counterexample does not refute the hypothesis");
  std::size_t lo = 0, hi = m;  // !agrees(lo), agrees(hi)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (agrees(mid) ? hi : lo) = mid;
  }
  return lo;
}

std::unique_ptr<Learner> make_learner(LearnerKind kind, const Alphabet& inputs, const Alphabet& outputs,
                                      const LearnerOracle& oracle) {
  std::unique_ptr<Learner> learner;
  if (kind == LearnerKind::LStarRS)
    learner = std::make_unique<LStarRS>(inputs, outputs, oracle);
  else
    learner = std::make_unique<KearnsVazirani>(inputs, outputs, oracle);
  learner->start();
  return learner;
}

LearnerFactory learner_factory(LearnerKind kind, Alphabet inputs, Alphabet outputs) {
  return [kind, inputs = std::move(inputs), outputs = std::move(outputs)](const LearnerOracle& oracle) {
    return make_learner(kind, inputs, outputs, oracle);
  };
}

}  // namespace caal
