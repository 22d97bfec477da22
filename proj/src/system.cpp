#include "caal/system.hpp"

#include <algorithm>
#include <map>

#include "caal/errors.hpp"

namespace caal {

Observation System::execute(WordView input) {
  if (stats_.symbols >= budget_) throw BudgetExhausted();
  Word out = respond(input, stats_.tests);
  ++stats_.tests;
  ++stats_.resets;
  stats_.symbols += input.size();
  return Observation{Word(input.begin(), input.end()), std::move(out)};
}

SimulatedSystem::SimulatedSystem(MealyMachine target, NoiseSpec noise, std::vector<Mutation> schedule)
    : target_(std::move(target)), noise_(noise), schedule_(std::move(schedule)), rng_(noise.seed) {
  if (!(noise_.level >= 0.0 && noise_.level <= 1.0)) throw ConfigError("noise level must lie in [0, 1]");
  std::sort(schedule_.begin(), schedule_.end(),
            [](const Mutation& a, const Mutation& b) { return a.at_test < b.at_test; });
  for (const auto& m : schedule_)
    if (!(m.machine.inputs() == target_.inputs()))
      throw ConfigError("mutated machine must share the target's input alphabet");
}

const MealyMachine& SimulatedSystem::target_at(std::uint64_t test_index) const {
  const MealyMachine* current = &target_;
  for (const auto& m : schedule_)
    if (test_index >= m.at_test) current = &m.machine;
  return *current;
}

const MealyMachine& SimulatedSystem::final_target() const {
  return schedule_.empty() ? target_ : schedule_.back().machine;
}

Word SimulatedSystem::respond(WordView input, std::uint64_t test_index) {
  const MealyMachine& m = target_at(test_index);
  const std::size_t ni = m.inputs().size(), no = m.outputs().size();
  Word out;
  out.reserve(input.size());
  StateId q = m.initial();
  for (Symbol a : input) {
    if (a >= ni) throw InputDomainError("input symbol outside the system's alphabet");
    Symbol fed = a;
    if (noise_.kind == NoiseKind::Input && rng_.chance(noise_.level)) fed = static_cast<Symbol>(rng_.below(ni));
    Symbol o = m.output(q, fed);
    q = m.next(q, fed);
    if (noise_.kind == NoiseKind::Output && rng_.chance(noise_.level)) o = static_cast<Symbol>(rng_.below(no));
    out.push_back(o);
  }
  return out;
}

void RepeatsPolicy::validate() const {
  if (min_repeats == 0 || max_repeats < min_repeats)
    throw ConfigError("repeats need 1 <= min_repeats <= max_repeats");
  if (!(threshold > 0.5 && threshold <= 1.0)) throw ConfigError("agreement threshold must lie in (0.5, 1]");
}

Observation execute_repeated(System& system, WordView input, const RepeatsPolicy& policy) {
  std::map<Word, std::uint32_t> votes;
  std::uint32_t total = 0;
  auto agreed = [&]() -> const Word* {
    for (const auto& [word, count] : votes)
      if (static_cast<double>(count) >= policy.threshold * total - 1e-9) return &word;
    return nullptr;
  };

  while (total < policy.min_repeats) {
    ++votes[system.execute(input).output];
    ++total;
  }
  const Word* winner = agreed();
  while (!winner && total < policy.max_repeats) {
    ++votes[system.execute(input).output];
    ++total;
    winner = agreed();
  }
  if (!winner) {
    // std::map iterates in lexicographic order, so the first maximum wins ties.
    auto best = votes.begin();
    for (auto it = votes.begin(); it != votes.end(); ++it)
      if (it->second > best->second) best = it;
    winner = &best->first;
  }
  return Observation{Word(input.begin(), input.end()), *winner};
}

}  // namespace caal
