#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "caal/ceal.hpp"
#include "caal/eq_testing.hpp"
#include "caal/learner.hpp"
#include "caal/reviser.hpp"
#include "caal/system.hpp"

namespace caal {

class CacheConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Write-once, prefix-closed membership cache.
class MatCache {
 public:
  std::optional<Word> lookup(WordView input) const;
  // Throws CacheConflict when `obs` contradicts a stored answer.
  void insert(const Observation& obs);
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Edge {
    Symbol input;
    Symbol output;
    std::size_t child;
  };
  std::vector<std::vector<Edge>> nodes_{1};
};

/// Cached answer, or a repeated system test whose majority answer is cached.
Word mat_mq(MatCache& cache, System& system, WordView input, const RepeatsPolicy& policy);

struct MatConfig {
  RepeatsPolicy repeats;
  SamplerParams sampler;
  std::uint64_t survive_budget = 2000;
};

/// Classic MAT loop; the final model is the last hypothesis. A cache conflict
/// or learner inconsistency ends the run as a failure.
LearnResult run_mat(const LearnerFactory& factory, System& system, const MatConfig& config,
                    const EventSink& sink = {});

}  // namespace caal
