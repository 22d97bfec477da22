#include "caal/observation_tree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "caal/errors.hpp"

namespace caal {

bool conflicts(const Observation& a, const Observation& b) {
  const std::size_t common = std::min({a.input.size(), b.input.size(), a.output.size(), b.output.size()});
  for (std::size_t k = 0; k < common; ++k) {
    if (a.input[k] != b.input[k]) return false;
    if (a.output[k] != b.output[k]) return true;
  }
  return false;
}

ObservationTree::ObservationTree(Alphabet inputs, Alphabet outputs, UpdateStrategy strategy)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), strategy_(strategy) {
  new_node();
}

ObservationTree::NodeId ObservationTree::new_node() {
  ++live_nodes_;
  if (!free_.empty()) {
    const NodeId id = free_.back();
    free_.pop_back();
    return id;
  }
  nodes_.emplace_back();
  return static_cast<NodeId>(nodes_.size() - 1);
}

void ObservationTree::free_subtree(NodeId node) {
  std::vector<NodeId> stack{node};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    for (const Edge& e : nodes_[id].edges) stack.push_back(e.child);
    nodes_[id].edges.clear();
    nodes_[id].edges.shrink_to_fit();
    free_.push_back(id);
    --live_nodes_;
  }
}

const ObservationTree::Edge* ObservationTree::active_edge(NodeId node, Symbol a) const {
  for (const Edge& e : nodes_[node].edges)
    if (e.input == a && e.active) return &e;
  return nullptr;
}

std::optional<Word> ObservationTree::lookup(WordView input) const {
  Word out;
  out.reserve(input.size());
  NodeId node = 0;
  for (Symbol a : input) {
    const Edge* e = active_edge(node, a);
    if (!e) return std::nullopt;
    out.push_back(e->output);
    node = e->child;
  }
  return out;
}

bool ObservationTree::update(const Observation& obs) {
  if (obs.input.size() != obs.output.size())
    throw ContractViolation("observation input and output lengths differ");
  ++sequence_;
  return strategy_ == UpdateStrategy::MostRecent ? update_most_recent(obs) : update_most_frequent(obs);
}

bool ObservationTree::update_most_recent(const Observation& obs) {
  bool conflict = false;
  NodeId node = 0;
  for (std::size_t k = 0; k < obs.input.size(); ++k) {
    const Symbol a = obs.input[k], o = obs.output[k];
    auto& edges = nodes_[node].edges;
    auto it = std::find_if(edges.begin(), edges.end(), [a](const Edge& e) { return e.input == a; });
    if (it == edges.end()) {
      const NodeId child = new_node();
      nodes_[node].edges.push_back(Edge{a, o, child, true, 1, sequence_, 0, {}});
      node = child;
      continue;
    }
    const auto idx = static_cast<std::size_t>(it - edges.begin());
    if (it->output != o) {
      free_subtree(it->child);
      const NodeId child = new_node();
      Edge& e = nodes_[node].edges[idx];
      e.output = o;
      e.child = child;
      conflict = true;
    }
    nodes_[node].edges[idx].last_seen = sequence_;
    node = nodes_[node].edges[idx].child;
  }
  return conflict;
}

bool ObservationTree::update_most_frequent(const Observation& obs) {
  struct Step {
    NodeId node;
    std::size_t edge;
    std::optional<Symbol> previously_active;
    bool in_language;  // path so far was served by lookup() before this call
  };
  std::vector<Step> steps;
  steps.reserve(obs.input.size());

  NodeId node = 0;
  bool in_language = true;
  for (std::size_t k = 0; k < obs.input.size(); ++k) {
    const Symbol a = obs.input[k], o = obs.output[k];
    std::optional<Symbol> prev;
    if (const Edge* e = active_edge(node, a)) prev = e->output;

    auto& edges = nodes_[node].edges;
    auto it = std::find_if(edges.begin(), edges.end(),
                           [a, o](const Edge& e) { return e.input == a && e.output == o; });
    std::size_t idx;
    if (it == edges.end()) {
      const NodeId child = new_node();
      nodes_[node].edges.push_back(Edge{a, o, child, false, 0, 0, 0, {}});
      idx = nodes_[node].edges.size() - 1;
    } else {
      idx = static_cast<std::size_t>(it - edges.begin());
    }
    Edge& e = nodes_[node].edges[idx];
    ++e.count;
    e.last_seen = sequence_;
    steps.push_back({node, idx, prev, in_language});
    in_language = in_language && prev && *prev == o;
    node = e.child;
  }
  if (steps.empty()) return false;
  nodes_[steps.back().node].edges[steps.back().edge].end_seq = sequence_;

  bool conflict = false;
  for (auto s = steps.rbegin(); s != steps.rend(); ++s) {
    auto& edges = nodes_[s->node].edges;
    Edge& e = edges[s->edge];
    Score best;
    if (e.end_seq) best = {e.count, e.end_seq};
    for (const Edge& c : nodes_[e.child].edges) best = std::max(best, c.best);
    e.best = best;

    const Symbol a = e.input;
    Edge* winner = nullptr;
    for (Edge& c : edges) {
      if (c.input != a) continue;
      c.active = false;
      if (!winner || winner->best < c.best) winner = &c;
    }
    winner->active = true;
    if (s->in_language && s->previously_active && *s->previously_active != winner->output) conflict = true;
  }
  return conflict;
}

std::vector<Observation> ObservationTree::maximal_observations() const {
  std::vector<Observation> result;
  Observation path;
  std::function<void(NodeId)> visit = [&](NodeId node) {
    std::vector<const Edge*> active;
    for (const Edge& e : nodes_[node].edges)
      if (e.active) active.push_back(&e);
    if (active.empty()) {
      if (!path.input.empty()) result.push_back(path);
      return;
    }
    std::sort(active.begin(), active.end(), [](const Edge* x, const Edge* y) { return x->input < y->input; });
    for (const Edge* e : active) {
      path.input.push_back(e->input);
      path.output.push_back(e->output);
      visit(e->child);
      path.input.pop_back();
      path.output.pop_back();
    }
  };
  visit(0);
  return result;
}

std::optional<Observation> ObservationTree::first_disagreement(const MealyMachine& h) const {
  // Depth-first over sorted inputs: the first disagreeing edge in preorder lies
  // on the first disagreeing maximal path and is that path's first mismatch.
  Observation path;
  std::function<bool(NodeId, StateId)> visit = [&](NodeId node, StateId q) {
    std::vector<const Edge*> active;
    for (const Edge& e : nodes_[node].edges)
      if (e.active) active.push_back(&e);
    std::sort(active.begin(), active.end(), [](const Edge* x, const Edge* y) { return x->input < y->input; });
    for (const Edge* e : active) {
      path.input.push_back(e->input);
      path.output.push_back(e->output);
      if (h.output(q, e->input) != e->output || visit(e->child, h.next(q, e->input))) return true;
      path.input.pop_back();
      path.output.pop_back();
    }
    return false;
  };
  if (!(h.inputs() == inputs_)) throw ConfigError("hypothesis input alphabet differs from the tree's");
  if (!(h.outputs() == outputs_)) throw ConfigError("hypothesis output alphabet differs from the tree's");
  if (visit(0, h.initial())) return path;
  return std::nullopt;
}

std::string ObservationTree::to_dot() const {
  std::ostringstream os;
  os << "digraph tree {\n  __start0 [label=\"\" shape=\"none\"];\n  __start0 -> t0;\n";
  std::vector<NodeId> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const NodeId id = queue[h];
    os << "  t" << id << " [shape=\"circle\" label=\"\"];\n";
    for (const Edge& e : nodes_[id].edges) {
      os << "  t" << id << " -> t" << e.child << " [label=\"" << inputs_.name(e.input) << " / "
         << outputs_.name(e.output);
      if (strategy_ == UpdateStrategy::MostFrequent) os << " [" << e.count << "]";
      os << "\"" << (e.active ? "" : " style=\"dashed\"") << "];\n";
      queue.push_back(e.child);
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace caal
