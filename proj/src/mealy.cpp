#include "caal/mealy.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "caal/errors.hpp"
#include "caal/random.hpp"

namespace caal {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols) {
  std::sort(symbols.begin(), symbols.end());
  if (std::adjacent_find(symbols.begin(), symbols.end()) != symbols.end())
    throw ConfigError("alphabet contains duplicate symbols");
  for (const auto& s : symbols)
    if (s.empty()) throw ConfigError("alphabet contains an empty symbol");
  symbols_ = std::make_shared<const std::vector<std::string>>(std::move(symbols));
}

const std::vector<std::string>& Alphabet::symbols() const {
  static const std::vector<std::string> none;
  return symbols_ ? *symbols_ : none;
}

const std::string& Alphabet::name(Symbol s) const {
  if (s >= size()) throw InputDomainError("symbol index " + std::to_string(s) + " outside alphabet");
  return (*symbols_)[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  const auto& syms = symbols();
  auto it = std::lower_bound(syms.begin(), syms.end(), name);
  if (it == syms.end() || *it != name) return std::nullopt;
  return static_cast<Symbol>(it - syms.begin());
}

Symbol Alphabet::index(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw InputDomainError("symbol '" + std::string(name) + "' outside alphabet");
}

Word Alphabet::encode(std::span<const std::string> names) const {
  Word w;
  w.reserve(names.size());
  for (const auto& n : names) w.push_back(index(n));
  return w;
}

std::string Alphabet::render(WordView word, std::string_view sep) const {
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += sep;
    out += name(word[k]);
  }
  return out;
}

// ------------------------------------------------------------ MealyMachine

MealyMachine::MealyMachine(Alphabet inputs, Alphabet outputs, std::size_t num_states, StateId initial,
                           std::vector<StateId> transitions, std::vector<Symbol> outputs_table)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      num_states_(num_states),
      initial_(initial),
      delta_(std::move(transitions)),
      lambda_(std::move(outputs_table)) {
  if (inputs_.empty() || outputs_.empty()) throw ConfigError("alphabets must be non-empty");
  if (num_states_ == 0) throw ConfigError("machine needs at least one state");
  if (initial_ >= num_states_) throw ConfigError("initial state out of range");
  const std::size_t cells = num_states_ * inputs_.size();
  if (delta_.size() != cells || lambda_.size() != cells)
    throw ConfigError("transition/output tables must cover every (state, input) pair");
  for (StateId q : delta_)
    if (q >= num_states_) throw ConfigError("transition target out of range");
  for (Symbol o : lambda_)
    if (o >= outputs_.size()) throw ConfigError("output symbol out of range");
}

Word run_word_from(const MealyMachine& m, StateId q, WordView input) {
  Word out;
  out.reserve(input.size());
  const std::size_t k = m.inputs().size();
  for (Symbol a : input) {
    if (a >= k) throw InputDomainError("input symbol index " + std::to_string(a) + " outside alphabet");
    out.push_back(m.output(q, a));
    q = m.next(q, a);
  }
  return out;
}

Word run_word(const MealyMachine& m, WordView input) { return run_word_from(m, m.initial(), input); }

StateId reach(const MealyMachine& m, WordView input) {
  StateId q = m.initial();
  for (Symbol a : input) {
    if (a >= m.inputs().size()) throw InputDomainError("input symbol outside alphabet");
    q = m.next(q, a);
  }
  return q;
}

// ------------------------------------------------------------- equivalence

std::optional<Observation> equivalent(const MealyMachine& m1, const MealyMachine& m2) {
  if (!(m1.inputs() == m2.inputs())) throw ConfigError("equivalence check needs identical input alphabets");

  // Map m2 outputs into m1's table by name; -1 never matches.
  std::vector<std::int64_t> out_map(m2.outputs().size(), -1);
  for (Symbol o = 0; o < m2.outputs().size(); ++o)
    if (auto s = m1.outputs().find(m2.outputs().name(o))) out_map[o] = *s;

  const std::size_t k = m1.inputs().size();
  const std::size_t n2 = m2.num_states();
  struct Visit {
    std::int64_t parent;
    Symbol via;
  };
  std::vector<std::int64_t> seen(m1.num_states() * n2, -1);
  std::vector<Visit> visits;
  std::vector<std::pair<StateId, StateId>> pairs;

  auto word_to = [&](std::int64_t v) {
    Word w;
    for (; v > 0; v = visits[v].parent) w.push_back(visits[v].via);
    std::reverse(w.begin(), w.end());
    return w;
  };

  seen[m1.initial() * n2 + m2.initial()] = 0;
  visits.push_back({-1, 0});
  pairs.emplace_back(m1.initial(), m2.initial());
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    auto [p, q] = pairs[head];
    for (Symbol a = 0; a < k; ++a) {
      if (static_cast<std::int64_t>(m1.output(p, a)) != out_map[m2.output(q, a)]) {
        Word w = word_to(static_cast<std::int64_t>(head));
        w.push_back(a);
        Word o = run_word(m1, w);
        return Observation{std::move(w), std::move(o)};
      }
      const StateId p2 = m1.next(p, a), q2 = m2.next(q, a);
      auto& slot = seen[p2 * n2 + q2];
      if (slot < 0) {
        slot = static_cast<std::int64_t>(visits.size());
        visits.push_back({static_cast<std::int64_t>(head), a});
        pairs.emplace_back(p2, q2);
      }
    }
  }
  return std::nullopt;
}

// -------------------------------------------------------------- refinement

Refinement refine(const MealyMachine& m) {
  const std::size_t n = m.num_states();
  const std::size_t k = m.inputs().size();

  std::vector<char> reachable(n, 0);
  std::vector<StateId> order{m.initial()};
  reachable[m.initial()] = 1;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (Symbol a = 0; a < k; ++a) {
      StateId t = m.next(order[h], a);
      if (!reachable[t]) {
        reachable[t] = 1;
        order.push_back(t);
      }
    }
  std::sort(order.begin(), order.end());

  // Splitting tree: inner nodes carry the word that split them.
  struct Node {
    std::int64_t parent = -1;
    std::size_t depth = 0;
    Word separator;
    std::vector<StateId> states;
    bool leaf = true;
  };
  std::vector<Node> tree(1);
  tree[0].states = order;
  std::vector<std::int64_t> leaf_of(n, -1);
  for (StateId q : order) leaf_of[q] = 0;

  Refinement r;
  auto lca = [&](std::int64_t x, std::int64_t y) {
    while (tree[x].depth > tree[y].depth) x = tree[x].parent;
    while (tree[y].depth > tree[x].depth) y = tree[y].parent;
    while (x != y) {
      x = tree[x].parent;
      y = tree[y].parent;
    }
    return x;
  };
  auto split = [&](std::size_t node, Word w) {
    std::map<Word, std::vector<StateId>> groups;
    for (StateId q : tree[node].states) groups[run_word_from(m, q, w)].push_back(q);
    tree[node].leaf = false;
    tree[node].separator = w;
    tree[node].states.clear();
    for (auto& [out, states] : groups) {
      Node child;
      child.parent = static_cast<std::int64_t>(node);
      child.depth = tree[node].depth + 1;
      child.states = std::move(states);
      const auto id = static_cast<std::int64_t>(tree.size());
      for (StateId q : child.states) leaf_of[q] = id;
      tree.push_back(std::move(child));
    }
    r.separators.push_back(std::move(w));
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t node = 0; node < tree.size(); ++node) {
      if (!tree[node].leaf || tree[node].states.size() < 2) continue;
      const auto& states = tree[node].states;
      std::optional<Word> splitter;
      for (Symbol a = 0; a < k && !splitter; ++a)
        for (StateId q : states)
          if (m.output(q, a) != m.output(states.front(), a)) {
            splitter = Word{a};
            break;
          }
      for (Symbol a = 0; a < k && !splitter; ++a) {
        const std::int64_t first = leaf_of[m.next(states.front(), a)];
        for (StateId q : states) {
          const std::int64_t other = leaf_of[m.next(q, a)];
          if (other != first) {
            Word w{a};
            const auto& sep = tree[lca(first, other)].separator;
            w.insert(w.end(), sep.begin(), sep.end());
            splitter = std::move(w);
            break;
          }
        }
      }
      if (splitter) {
        split(node, std::move(*splitter));
        changed = true;
      }
    }
  }

  r.block.assign(n, -1);
  std::map<std::int64_t, std::int64_t> numbering;
  for (StateId q : order) {
    auto [it, fresh] = numbering.try_emplace(leaf_of[q], static_cast<std::int64_t>(numbering.size()));
    r.block[q] = it->second;
  }
  r.num_blocks = numbering.size();
  return r;
}

MealyMachine minimize_canonical(const MealyMachine& m) {
  const Refinement r = refine(m);
  const std::size_t k = m.inputs().size();

  std::vector<StateId> representative(r.num_blocks);
  for (StateId q = m.num_states(); q-- > 0;)
    if (r.block[q] >= 0) representative[r.block[q]] = q;

  std::vector<std::int64_t> canon(r.num_blocks, -1);
  std::vector<std::int64_t> bfs{r.block[m.initial()]};
  canon[bfs[0]] = 0;
  for (std::size_t h = 0; h < bfs.size(); ++h)
    for (Symbol a = 0; a < k; ++a) {
      const auto b = r.block[m.next(representative[bfs[h]], a)];
      if (canon[b] < 0) {
        canon[b] = static_cast<std::int64_t>(bfs.size());
        bfs.push_back(b);
      }
    }

  std::vector<StateId> delta(bfs.size() * k);
  std::vector<Symbol> lambda(bfs.size() * k);
  for (std::size_t c = 0; c < bfs.size(); ++c) {
    const StateId q = representative[bfs[c]];
    for (Symbol a = 0; a < k; ++a) {
      delta[c * k + a] = static_cast<StateId>(canon[r.block[m.next(q, a)]]);
      lambda[c * k + a] = m.output(q, a);
    }
  }
  return MealyMachine(m.inputs(), m.outputs(), bfs.size(), 0, std::move(delta), std::move(lambda));
}

std::string fingerprint(const MealyMachine& m) {
  const MealyMachine c = minimize_canonical(m);
  std::ostringstream os;
  os << c.num_states() << '|';
  for (const auto& s : c.inputs().symbols()) os << s << ',';
  os << '|';
  const std::size_t k = c.inputs().size();
  for (StateId q = 0; q < c.num_states(); ++q)
    for (Symbol a = 0; a < k; ++a) os << c.next(q, a) << ':' << c.outputs().name(c.output(q, a)) << ';';
  return os.str();
}

// -------------------------------------------------------------- generation

MealyMachine random_mealy(std::size_t num_states, const Alphabet& inputs, const Alphabet& outputs,
                          std::uint64_t seed) {
  if (num_states == 0) throw GenerationError("random_mealy needs at least one state");
  if (inputs.empty() || outputs.empty()) throw GenerationError("random_mealy needs non-empty alphabets");

  const std::size_t k = inputs.size();
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::int64_t> delta(num_states * k, -1);
    // Spanning tree first: state s is attached to a free slot of an earlier state.
    std::vector<std::size_t> free_slots;
    for (std::size_t a = 0; a < k; ++a) free_slots.push_back(a);
    for (std::size_t s = 1; s < num_states; ++s) {
      const std::size_t pick = rng.below(free_slots.size());
      delta[free_slots[pick]] = static_cast<std::int64_t>(s);
      free_slots.erase(free_slots.begin() + static_cast<std::ptrdiff_t>(pick));
      for (std::size_t a = 0; a < k; ++a) free_slots.push_back(s * k + a);
    }
    std::vector<StateId> transitions(num_states * k);
    std::vector<Symbol> lambda(num_states * k);
    for (std::size_t c = 0; c < transitions.size(); ++c) {
      transitions[c] = delta[c] >= 0 ? static_cast<StateId>(delta[c]) : static_cast<StateId>(rng.below(num_states));
      lambda[c] = static_cast<Symbol>(rng.below(outputs.size()));
    }
    MealyMachine m(inputs, outputs, num_states, 0, std::move(transitions), std::move(lambda));
    if (refine(m).num_blocks == num_states) return m;
  }
  throw GenerationError("no minimal machine found within 1000 attempts");
}

}  // namespace caal
