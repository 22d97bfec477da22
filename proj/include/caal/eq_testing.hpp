#pragma once

#include <cstdint>
#include <vector>

#include "caal/mealy.hpp"
#include "caal/random.hpp"

namespace caal {

struct SamplerParams {
  double infix_length = 3.0;      // mean of the geometric random infix
  std::uint32_t extra_states = 2; // max random symbols appended after the suffix
  std::uint64_t seed = 0;
};

/// Suffixes distinguishing every pair of inequivalent states of `h`; one word
/// per refinement split, sorted shortlex, so |W| <= states - 1.
std::vector<Word> char_set(const MealyMachine& h);

/// Shortest access word per reachable state (BFS, lexicographic ties)
/// extended by every input, indexed as state * |I| + input. Throws
/// ConfigError when `h` has unreachable states.
std::vector<Word> transition_cover(const MealyMachine& h);

/// Randomized Wp-style test words for one hypothesis:
/// transition-cover word + geometric random infix + (W or empty) + up to
/// `extra_states` random symbols. Every word of the Wp suite for m extra
/// states has positive probability.
class TestSampler {
 public:
  TestSampler(const MealyMachine& hypothesis, const SamplerParams& params);

  Word sample(Rng& rng) const;

  const std::vector<Word>& cover() const { return cover_; }
  const std::vector<Word>& suffixes() const { return suffixes_; }

 private:
  std::size_t num_inputs_;
  std::vector<Word> cover_;
  std::vector<Word> suffixes_;  // W plus the empty word
  SamplerParams params_;
};

}  // namespace caal
