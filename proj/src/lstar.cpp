#include "caal/lstar.hpp"

#include <algorithm>

namespace caal {

void LStarRS::start() {
  short_prefixes_ = {Word{}};
  suffixes_.clear();
  for (Symbol a = 0; a < inputs_.size(); ++a) suffixes_.push_back(Word{a});
  rows_.clear();
  hypothesis_.reset();
}

const LStarRS::Row& LStarRS::row(const Word& prefix) {
  Row& r = rows_[prefix];
  while (r.size() < suffixes_.size()) r.push_back(ask_suffix(prefix, suffixes_[r.size()]));
  return r;
}

void LStarRS::close() {
  std::map<Row, StateId> classes;
  for (StateId s = 0; s < short_prefixes_.size(); ++s) classes.emplace(row(short_prefixes_[s]), s);
  for (std::size_t s = 0; s < short_prefixes_.size(); ++s)
    for (Symbol a = 0; a < inputs_.size(); ++a) {
      Word ext = short_prefixes_[s];
      ext.push_back(a);
      const Row& r = row(ext);
      if (classes.contains(r)) continue;
      classes.emplace(r, static_cast<StateId>(short_prefixes_.size()));
      short_prefixes_.push_back(std::move(ext));
    }
}

MealyMachine LStarRS::next_hypothesis() {
  close();
  std::map<Row, StateId> classes;
  for (StateId s = 0; s < short_prefixes_.size(); ++s) classes.emplace(rows_.at(short_prefixes_[s]), s);

  const std::size_t n = short_prefixes_.size(), k = inputs_.size();
  std::vector<StateId> delta(n * k);
  std::vector<Symbol> lambda(n * k);
  for (StateId s = 0; s < n; ++s) {
    const Row& r = rows_.at(short_prefixes_[s]);
    for (Symbol a = 0; a < k; ++a) {
      Word ext = short_prefixes_[s];
      ext.push_back(a);
      delta[s * k + a] = classes.at(rows_.at(ext));
      lambda[s * k + a] = r[a][0];  // column a is the single symbol a
    }
  }
  hypothesis_.emplace(inputs_, outputs_, n, 0, std::move(delta), std::move(lambda));
  return *hypothesis_;
}

void LStarRS::consume_counterexample(const Observation& cex) {
  if (!hypothesis_) throw LearnerInconsistency("counterexample before any hypothesis");
  const std::size_t i = breakpoint(*hypothesis_, short_prefixes_, cex);
  Word v(cex.input.begin() + static_cast<std::ptrdiff_t>(i + 1), cex.input.end());
  if (v.empty() || std::find(suffixes_.begin(), suffixes_.end(), v) != suffixes_.end())
    throw LearnerInconsistency("counterexample yields no new distinguishing suffix");
  suffixes_.push_back(std::move(v));
  hypothesis_.reset();
}

}  // namespace caal
