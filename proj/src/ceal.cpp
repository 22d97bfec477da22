#include "caal/ceal.hpp"

#include <memory>

namespace caal {

std::size_t HypothesisLog::record(const MealyMachine& h) {
  MealyMachine canonical = minimize_canonical(h);
  std::string fp = fingerprint(canonical);
  auto [it, inserted] = index_.try_emplace(fp, entries_.size());
  if (inserted) entries_.push_back(Entry{std::move(fp), 0, 0, 0, std::move(canonical)});
  Entry& e = entries_[it->second];
  ++e.count;
  e.last = total_++;
  return it->second;
}

std::optional<std::size_t> elect(const HypothesisLog& log, Selection selection) {
  const auto& entries = log.entries();
  if (entries.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t k = 1; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const auto& b = entries[best];
    const bool better = selection == Selection::MostRecent
                            ? e.last > b.last
                            : (e.count != b.count ? e.count > b.count : e.last > b.last);
    if (better) best = k;
  }
  return best;
}

const char* to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::Survived: return "survived";
    case RunOutcome::Timeout: return "timeout";
    case RunOutcome::NoHypothesis: return "no_hypothesis";
    case RunOutcome::CacheConflict: return "cache_conflict";
    case RunOutcome::Inconsistency: return "inconsistency";
  }
  return "unknown";
}

LearnResult run_ceal(const LearnerFactory& factory, Reviser& reviser, Selection selection) {
  const LearnerOracle oracle{[&reviser](WordView w) { return reviser.mq(w); },
                             [&reviser](const MealyMachine& h) { return reviser.eq(h); }};
  LearnResult result;
  HypothesisLog log;
  std::unique_ptr<Learner> learner;
  bool survived = false;
  const std::uint64_t budget = reviser.config().survive_budget;

  try {
    while (!survived) {
      try {
        if (!learner) learner = factory(oracle);
        MealyMachine h = learner->next_hypothesis();
        ++result.hypotheses;
        reviser.emit(EventKind::Hypothesis);
        if (auto cex = reviser.check(h)) {
          learner->consume_counterexample(*cex);
          continue;
        }
        const std::size_t entry = log.record(h);
        EqAnswer answer = reviser.test(h, budget - log.entries()[entry].survived);
        log.add_survived(entry, reviser.last_passed());
        if (auto* cex = std::get_if<Observation>(&answer))
          learner->consume_counterexample(*cex);
        else if (std::holds_alternative<Restart>(answer)) {
          learner.reset();
          ++result.restarts;
        } else
          survived = true;
      } catch (const RestartSignal&) {
        learner.reset();
        ++result.restarts;
      }
    }
    result.outcome = RunOutcome::Survived;
  } catch (const BudgetExhausted&) {
    result.outcome = RunOutcome::Timeout;
  } catch (const LearnerInconsistency&) {
    result.outcome = RunOutcome::Inconsistency;
  }

  result.conflicts = reviser.counters().conflicts;
  result.eq_symbols = reviser.counters().eq_symbols;
  result.distinct_hypotheses = log.entries().size();
  if (result.outcome == RunOutcome::Survived) {
    // Survived implies the last hypothesis was logged, so the log is non-empty.
    result.model = log.entries()[*elect(log, selection)].model;
  }
  return result;
}

}  // namespace caal
