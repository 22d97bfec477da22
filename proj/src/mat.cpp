#include "caal/mat.hpp"

#include <memory>

#include "caal/errors.hpp"

namespace caal {

std::optional<Word> MatCache::lookup(WordView input) const {
  Word out;
  out.reserve(input.size());
  std::size_t node = 0;
  for (Symbol a : input) {
    const Edge* found = nullptr;
    for (const Edge& e : nodes_[node])
      if (e.input == a) found = &e;
    if (!found) return std::nullopt;
    out.push_back(found->output);
    node = found->child;
  }
  return out;
}

void MatCache::insert(const Observation& obs) {
  if (obs.input.size() != obs.output.size()) throw ContractViolation("observation input and output lengths differ");
  std::size_t node = 0;
  for (std::size_t k = 0; k < obs.input.size(); ++k) {
    const Symbol a = obs.input[k], o = obs.output[k];
    std::size_t next = 0;
    for (const Edge& e : nodes_[node])
      if (e.input == a) {
        if (e.output != o) throw CacheConflict("cache conflict at depth " + std::to_string(k + 1));
        next = e.child;
      }
    if (next == 0) {
      next = nodes_.size();
      nodes_[node].push_back(Edge{a, o, next});
      nodes_.emplace_back();
    }
    node = next;
  }
}

Word mat_mq(MatCache& cache, System& system, WordView input, const RepeatsPolicy& policy) {
  if (auto cached = cache.lookup(input)) return std::move(*cached);
  Observation obs = execute_repeated(system, input, policy);
  cache.insert(obs);
  return std::move(obs.output);
}

LearnResult run_mat(const LearnerFactory& factory, System& system, const MatConfig& config, const EventSink& sink) {
  config.repeats.validate();
  if (config.survive_budget == 0) throw ConfigError("survive budget must be positive");

  MatCache cache;
  Rng sampler_rng(config.sampler.seed);
  auto emit = [&](EventKind kind, WordView word) {
    if (sink) sink(Event{kind, system.stats().tests, word.size(), system.stats().symbols, word});
  };
  const LearnerOracle oracle{
      [&](WordView w) -> RevisorAnswer {
        if (auto cached = cache.lookup(w)) return std::move(*cached);
        emit(EventKind::MqTest, w);
        return mat_mq(cache, system, w, config.repeats);
      },
      [&](const MealyMachine& h) -> EqAnswer {
        const TestSampler sampler(h, config.sampler);
        for (std::uint64_t n = 0; n < config.survive_budget; ++n) {
          const Word w = sampler.sample(sampler_rng);
          emit(EventKind::EqTest, w);
          Observation obs = execute_repeated(system, w, config.repeats);
          cache.insert(obs);
          const Word predicted = run_word(h, w);
          for (std::size_t k = 0; k < w.size(); ++k)
            if (predicted[k] != obs.output[k]) {
              obs.input.resize(k + 1);
              obs.output.resize(k + 1);
              return obs;
            }
        }
        return Survived{};
      }};

  LearnResult result;
  std::optional<MealyMachine> last;
  std::uint64_t eq_symbols = 0;
  HypothesisLog log;
  try {
    std::unique_ptr<Learner> learner = factory(oracle);
    for (;;) {
      MealyMachine h = learner->next_hypothesis();
      ++result.hypotheses;
      emit(EventKind::Hypothesis, {});
      log.record(h);
      last = h;
      const std::uint64_t before = system.stats().symbols;
      EqAnswer answer;
      try {
        answer = oracle.eq(h);
      } catch (...) {
        eq_symbols += system.stats().symbols - before;
        throw;
      }
      eq_symbols += system.stats().symbols - before;
      if (std::holds_alternative<Survived>(answer)) break;
      learner->consume_counterexample(std::get<Observation>(answer));
    }
    result.outcome = RunOutcome::Survived;
    result.model = last;
  } catch (const BudgetExhausted&) {
    result.outcome = RunOutcome::Timeout;
  } catch (const CacheConflict&) {
    result.outcome = RunOutcome::CacheConflict;
    ++result.conflicts;
  } catch (const LearnerInconsistency&) {
    result.outcome = RunOutcome::Inconsistency;
  }
  result.eq_symbols = eq_symbols;
  result.distinct_hypotheses = log.entries().size();
  return result;
}

}  // namespace caal
