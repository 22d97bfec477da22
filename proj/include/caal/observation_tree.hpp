#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caal/mealy.hpp"

namespace caal {

enum class UpdateStrategy { MostRecent, MostFrequent };

/// True iff the two observations disagree on the output at some position
/// covered by both inputs' common prefix.
bool conflicts(const Observation& a, const Observation& b);

/// Partial tree-shaped Mealy machine holding every observation gathered from
/// the system. Each (node, input) may hold several candidate edges with
/// distinct outputs; exactly one of them is active and defines the language
/// served by lookup().
///
/// MostRecent keeps a single candidate per (node, input). An observation that
/// disagrees with it overwrites the output and drops the stale subtree.
///
/// MostFrequent keeps every candidate with traversal counts. An edge where
/// some observation ended scores (traversal count, sequence number of the
/// latest observation ending there); a candidate's score is the best score in
/// its subtree and the active candidate is the one with the best score. On
/// streams that repeat one input word, the active output word is therefore
/// the most frequent observed output word, ties going to the most recent one.
class ObservationTree {
 public:
  ObservationTree(Alphabet inputs, Alphabet outputs, UpdateStrategy strategy);

  UpdateStrategy strategy() const { return strategy_; }
  const Alphabet& inputs() const { return inputs_; }
  const Alphabet& outputs() const { return outputs_; }

  /// Output along active edges, nullopt when some step has no active edge.
  std::optional<Word> lookup(WordView input) const;

  /// Integrates an observation. Returns true iff some previously served
  /// answer changed (the language changed non-additively). Throws
  /// ContractViolation on a length mismatch.
  bool update(const Observation& obs);

  /// Maximal elements of the language (root-to-leaf active paths), depth
  /// first over sorted input symbols.
  std::vector<Observation> maximal_observations() const;

  /// First maximal observation (in maximal_observations() order) on which
  /// `h` disagrees, trimmed to its first disagreeing position.
  std::optional<Observation> first_disagreement(const MealyMachine& h) const;

  std::uint64_t updates() const { return sequence_; }
  std::size_t node_count() const { return live_nodes_; }

  /// Debug dump: active edges solid, inactive candidates dashed with counts.
  std::string to_dot() const;

 private:
  using NodeId = std::uint32_t;

  struct Score {
    std::uint64_t count = 0;
    std::uint64_t seq = 0;
    friend auto operator<=>(const Score&, const Score&) = default;
  };

  struct Edge {
    Symbol input;
    Symbol output;
    NodeId child;
    bool active = false;
    std::uint64_t count = 0;       // observations through this edge
    std::uint64_t last_seen = 0;   // latest observation through this edge
    std::uint64_t end_seq = 0;     // latest observation ending on this edge
    Score best;                    // best endpoint score in this subtree
  };

  struct Node {
    std::vector<Edge> edges;
  };

  NodeId new_node();
  void free_subtree(NodeId node);
  const Edge* active_edge(NodeId node, Symbol a) const;
  bool update_most_recent(const Observation& obs);
  bool update_most_frequent(const Observation& obs);

  Alphabet inputs_;
  Alphabet outputs_;
  UpdateStrategy strategy_;
  std::vector<Node> nodes_;
  std::vector<NodeId> free_;
  std::size_t live_nodes_ = 0;
  std::uint64_t sequence_ = 0;
};

}  // namespace caal
