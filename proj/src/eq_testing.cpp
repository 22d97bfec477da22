#include "caal/eq_testing.hpp"

#include <algorithm>
#include <optional>

#include "caal/errors.hpp"

namespace caal {

namespace {
bool shortlex(const Word& a, const Word& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}
}  // namespace

std::vector<Word> char_set(const MealyMachine& h) {
  std::vector<Word> w = refine(h).separators;
  std::sort(w.begin(), w.end(), shortlex);
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

std::vector<Word> transition_cover(const MealyMachine& h) {
  const std::size_t n = h.num_states(), k = h.inputs().size();
  std::vector<std::optional<Word>> access(n);
  access[h.initial()] = Word{};
  std::vector<StateId> queue{h.initial()};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Symbol a = 0; a < k; ++a) {
      const StateId t = h.next(queue[head], a);
      if (access[t]) continue;
      Word w = *access[queue[head]];
      w.push_back(a);
      access[t] = std::move(w);
      queue.push_back(t);
    }
  std::vector<Word> cover(n * k);
  for (StateId q = 0; q < n; ++q) {
    if (!access[q]) throw ConfigError("transition cover: state " + std::to_string(q) + " is unreachable");
    for (Symbol a = 0; a < k; ++a) {
      cover[q * k + a] = *access[q];
      cover[q * k + a].push_back(a);
    }
  }
  return cover;
}

TestSampler::TestSampler(const MealyMachine& hypothesis, const SamplerParams& params)
    : num_inputs_(hypothesis.inputs().size()), params_(params) {
  const MealyMachine h = minimize_canonical(hypothesis);
  cover_ = transition_cover(h);
  suffixes_.push_back(Word{});
  for (auto& w : char_set(h)) suffixes_.push_back(std::move(w));
}

Word TestSampler::sample(Rng& rng) const {
  Word w = cover_[rng.below(cover_.size())];
  const std::uint64_t infix = rng.geometric(1.0 / (params_.infix_length + 1.0));
  for (std::uint64_t k = 0; k < infix; ++k) w.push_back(static_cast<Symbol>(rng.below(num_inputs_)));
  const Word& suffix = suffixes_[rng.below(suffixes_.size())];
  w.insert(w.end(), suffix.begin(), suffix.end());
  const std::uint64_t extra = rng.below(params_.extra_states + 1ULL);
  for (std::uint64_t k = 0; k < extra; ++k) w.push_back(static_cast<Symbol>(rng.below(num_inputs_)));
  return w;
}

}  // namespace caal
