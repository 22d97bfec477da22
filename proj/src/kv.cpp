#include "caal/kv.hpp"

namespace caal {

void KearnsVazirani::start() {
  nodes_.assign(1, Node{});
  access_.clear();
  leaf_of_.clear();
  hypothesis_.reset();
  add_state(Word{}, 0);
}

StateId KearnsVazirani::add_state(Word access, std::size_t leaf) {
  const auto id = static_cast<StateId>(access_.size());
  access_.push_back(std::move(access));
  leaf_of_.push_back(leaf);
  nodes_[leaf].state = id;
  return id;
}

StateId KearnsVazirani::sift(const Word& word) {
  std::size_t node = 0;
  while (!nodes_[node].state) {
    const Word out = ask_suffix(word, nodes_[node].discriminator);
    std::size_t next = nodes_.size();
    for (const auto& [label, child] : nodes_[node].children)
      if (label == out) next = child;
    if (next == nodes_.size()) {
      nodes_[node].children.emplace_back(out, next);
      nodes_.emplace_back();
      return add_state(word, next);
    }
    node = next;
  }
  return *nodes_[node].state;
}

MealyMachine KearnsVazirani::next_hypothesis() {
  const std::size_t k = inputs_.size();
  std::vector<StateId> delta;
  std::vector<Symbol> lambda;
  for (StateId s = 0; s < access_.size(); ++s)
    for (Symbol a = 0; a < k; ++a) {
      Word ext = access_[s];
      ext.push_back(a);
      lambda.push_back(ask(ext).back());
      delta.push_back(sift(ext));
    }
  hypothesis_.emplace(inputs_, outputs_, access_.size(), 0, std::move(delta), std::move(lambda));
  return *hypothesis_;
}

void KearnsVazirani::consume_counterexample(const Observation& cex) {
  if (!hypothesis_) throw LearnerInconsistency("counterexample before any hypothesis");
  const MealyMachine& h = *hypothesis_;
  const std::size_t i = breakpoint(h, access_, cex);
  const StateId q = reach(h, WordView(cex.input).first(i));
  const Symbol a = cex.input[i];
  const StateId old = h.next(q, a);
  const Word v(cex.input.begin() + static_cast<std::ptrdiff_t>(i + 1), cex.input.end());

  Word fresh = access_[q];
  fresh.push_back(a);
  Word old_out = ask_suffix(access_[old], v);
  Word fresh_out = ask_suffix(fresh, v);
  if (v.empty() || old_out == fresh_out) throw LearnerInconsistency("counterexample yields no split");

  const std::size_t leaf = leaf_of_[old];
  const std::size_t old_leaf = nodes_.size(), fresh_leaf = nodes_.size() + 1;
  nodes_.resize(nodes_.size() + 2);
  Node& inner = nodes_[leaf];
  inner.state.reset();
  inner.discriminator = v;
  inner.children = {{std::move(old_out), old_leaf}, {std::move(fresh_out), fresh_leaf}};
  nodes_[old_leaf].state = old;
  leaf_of_[old] = old_leaf;
  add_state(std::move(fresh), fresh_leaf);
  hypothesis_.reset();
}

}  // namespace caal
