#include "caal/reviser.hpp"

#include "json.hpp"

#include "caal/errors.hpp"

namespace caal {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::MqTest: return "mq_test";
    case EventKind::EqTest: return "eq_test";
    case EventKind::Restart: return "restart";
    case EventKind::Hypothesis: return "hypothesis";
  }
  return "unknown";
}

std::string to_json_line(const Event& e) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(e.kind);
  j["test_index"] = e.test_index;
  j["word_length"] = e.word_length;
  j["symbols"] = e.symbols;
  return j.dump();
}

namespace {
// Cuts (input, output) at the first position where `h` disagrees.
std::optional<Observation> disagreement(const MealyMachine& h, const Observation& obs) {
  StateId q = h.initial();
  for (std::size_t k = 0; k < obs.input.size(); ++k) {
    if (h.output(q, obs.input[k]) != obs.output[k])
      return Observation{Word(obs.input.begin(), obs.input.begin() + static_cast<std::ptrdiff_t>(k + 1)),
                         Word(obs.output.begin(), obs.output.begin() + static_cast<std::ptrdiff_t>(k + 1))};
    q = h.next(q, obs.input[k]);
  }
  return std::nullopt;
}
}  // namespace

Reviser::Reviser(ObservationTree tree, System& system, ReviserConfig config)
    : tree_(std::move(tree)), system_(system), config_(config), sampler_rng_(config.sampler.seed) {
  config_.repeats.validate();
  if (config_.survive_budget == 0) throw ConfigError("survive budget must be positive");
}

void Reviser::emit(EventKind kind, WordView word) const {
  if (!sink_) return;
  const auto& s = system_.stats();
  sink_(Event{kind, s.tests, word.size(), s.symbols, word});
}

Observation Reviser::query_system(WordView input, std::uint64_t& symbol_counter) {
  const std::uint64_t before = system_.stats().symbols;
  try {
    Observation obs = execute_repeated(system_, input, config_.repeats);
    ++counters_.system_calls;
    symbol_counter += system_.stats().symbols - before;
    return obs;
  } catch (const BudgetExhausted&) {
    symbol_counter += system_.stats().symbols - before;
    throw;
  }
}

RevisorAnswer Reviser::apply(const Observation& obs) {
  ++counters_.integrated;
  if (tree_.update(obs)) {
    ++counters_.conflicts;
    ++counters_.restarts;
    emit(EventKind::Restart);
    return Restart{};
  }
  if (auto answer = tree_.lookup(obs.input)) return std::move(*answer);
  return obs.output;
}

RevisorAnswer Reviser::read(WordView input) {
  if (auto cached = tree_.lookup(input)) {
    ++counters_.mq_cache_hits;
    return std::move(*cached);
  }
  // Under MostFrequent a fresh answer can be outvoted at some prefix and stay
  // outside the language. Each retry raises either the elected branch or the
  // rival's count, so this ends in an answer or a conflict.
  for (;;) {
    emit(EventKind::MqTest, input);
    ++counters_.mq_system_tests;
    RevisorAnswer a = apply(query_system(input, counters_.mq_symbols));
    if (std::holds_alternative<Restart>(a)) return a;
    if (auto answer = tree_.lookup(input)) return std::move(*answer);
  }
}

Observation Reviser::believed(WordView input) const {
  for (std::size_t n = input.size(); n > 0; --n)
    if (auto out = tree_.lookup(input.first(n))) return Observation{Word(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(n)), std::move(*out)};
  return Observation{};
}

std::optional<Observation> Reviser::check(const MealyMachine& h) const { return tree_.first_disagreement(h); }

EqAnswer Reviser::test(const MealyMachine& h, std::uint64_t limit) {
  const TestSampler sampler(h, config_.sampler);
  if (limit == 0) limit = config_.survive_budget;
  for (last_passed_ = 0; last_passed_ < limit; ++last_passed_) {
    const Word w = sampler.sample(sampler_rng_);
    emit(EventKind::EqTest, w);
    ++counters_.eq_system_tests;
    Observation obs = query_system(w, counters_.eq_symbols);
    if (std::holds_alternative<Restart>(apply(obs))) return Restart{};
    // Judge h against the tree, not the raw answer: an outvoted observation
    // is no evidence against h.
    if (auto cex = disagreement(h, believed(obs.input))) return std::move(*cex);
  }
  return Survived{};
}

EqAnswer Reviser::eq(const MealyMachine& h) {
  if (auto cex = check(h)) return std::move(*cex);
  return test(h);
}

}  // namespace caal
