#include <set>

#include "caal/errors.hpp"
#include "caal/mealy.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace testing;

TEST_CASE("alphabet is sorted and rejects unknown symbols") {
  const Alphabet a({"z", "b", "m"});
  CHECK(a.symbols() == std::vector<std::string>{"b", "m", "z"});
  CHECK(a.index("z") == 2);
  CHECK_FALSE(a.find("q"));
  CHECK_THROWS_AS(a.index("q"), InputDomainError);
  CHECK_THROWS(Alphabet({"a", "a"}));
}

TEST_CASE("run_word") {
  SUBCASE("single state fixed point") {
    const MealyMachine m(Alphabet({"a"}), Alphabet({"x"}), 1, 0, {0}, {0});
    CHECK(str(m.outputs(), run_word(m, w(m.inputs(), "aaa"))) == "xxx");
  }
  SUBCASE("toggle") {
    const MealyMachine m = toggle();
    CHECK(str(m.outputs(), run_word(m, w(m.inputs(), "aaa"))) == "xyx");
  }
  SUBCASE("example tree read as a partial machine, completed with self loops") {
    // root -a/a-> n1 -a/a-> n2 -a/b-> n3, n2 -b/a-> n4, n1 -b/b-> n5
    const Alphabet s({"a", "b"});
    std::vector<StateId> delta{1, 6, 2, 5, 3, 4, 3, 3, 4, 4, 5, 5, 6, 6};
    std::vector<Symbol> lambda{0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    const MealyMachine m(s, s, 7, 0, delta, lambda);
    CHECK(str(s, run_word(m, w(s, "aab"))) == "aaa");
  }
  SUBCASE("symbol outside the alphabet") {
    CHECK_THROWS_AS(run_word(toggle(), Word{3}), InputDomainError);
  }
}

TEST_CASE("machine construction validates tables") {
  const Alphabet a({"a"}), o({"x"});
  CHECK_THROWS(MealyMachine(a, o, 2, 0, {1}, {0}));
  CHECK_THROWS(MealyMachine(a, o, 1, 0, {1}, {0}));
  CHECK_THROWS(MealyMachine(a, o, 1, 0, {0}, {1}));
  CHECK_THROWS(MealyMachine(a, o, 1, 1, {0}, {0}));
}

TEST_CASE("length preservation and prefix compatibility") {
  const MealyMachine m = random_mealy(6, Alphabet({"a", "b"}), Alphabet({"x", "y"}), 3);
  for (const Word& i : oracle::all_words(2, 6)) {
    const Word out = run_word(m, i);
    REQUIRE(out.size() == i.size());
    const Word shorter(i.begin(), i.end() - 1);
    CHECK(run_word(m, shorter) == Word(out.begin(), out.end() - 1));
  }
}

namespace {
// Shortest disagreement by enumeration, for cross-checking equivalent().
std::optional<Word> brute_witness(const MealyMachine& a, const MealyMachine& b, std::size_t max_len) {
  for (const Word& i : oracle::all_words(a.inputs().size(), max_len))
    if (run_word(a, i) != run_word(b, i)) return i;
  return std::nullopt;
}
}  // namespace

TEST_CASE("equivalent") {
  const MealyMachine t = toggle();
  CHECK_FALSE(equivalent(t, t));

  SUBCASE("renamed states") {
    const MealyMachine renamed(t.inputs(), t.outputs(), 2, 1, {1, 0}, {1, 0});
    CHECK_FALSE(equivalent(t, renamed));
  }
  SUBCASE("two states over {a} differing only at the second state") {
    const MealyMachine other(t.inputs(), t.outputs(), 2, 0, {1, 0}, {0, 0});
    const auto cex = equivalent(t, other);
    REQUIRE(cex);
    CHECK(str(t.inputs(), cex->input) == "aa");
    CHECK(str(t.outputs(), cex->output) == "xy");
    CHECK(brute_witness(t, other, 4) == cex->input);
  }
  SUBCASE("mismatched input alphabets") {
    const MealyMachine m(Alphabet({"b"}), Alphabet({"x"}), 1, 0, {0}, {0});
    CHECK_THROWS_AS(equivalent(t, m), ConfigError);
  }
  SUBCASE("agrees with exhaustive comparison on small machines") {
    const Alphabet in({"a", "b"}), out({"x", "y"});
    Rng rng(11);
    for (int k = 0; k < 300; ++k) {
      auto draw = [&] {
        const std::size_t n = 1 + rng.below(4);
        std::vector<StateId> d(n * 2);
        std::vector<Symbol> l(n * 2);
        for (auto& x : d) x = static_cast<StateId>(rng.below(n));
        for (auto& x : l) x = static_cast<Symbol>(rng.below(2));
        return MealyMachine(in, out, n, 0, d, l);
      };
      const MealyMachine a = draw(), b = draw();
      const auto cex = equivalent(a, b);
      const auto brute = brute_witness(a, b, a.num_states() * b.num_states());
      REQUIRE(cex.has_value() == brute.has_value());
      if (cex) {
        CHECK(cex->input.size() == brute->size());
        CHECK(cex->output == run_word(a, cex->input));
      }
    }
  }
}

TEST_CASE("minimize_canonical") {
  SUBCASE("idempotent on minimal machines") {
    const MealyMachine m = random_mealy(7, Alphabet({"a", "b"}), Alphabet({"x", "y"}), 9);
    const MealyMachine c = minimize_canonical(m);
    CHECK(minimize_canonical(c) == c);
    CHECK(c.num_states() == 7);
  }
  SUBCASE("merges behaviourally identical states") {
    // q1 and q2 both emit y and return to q0
    const MealyMachine m(Alphabet({"a", "b"}), Alphabet({"x", "y"}), 3, 0, {1, 2, 0, 0, 0, 0}, {0, 0, 1, 1, 1, 1});
    const MealyMachine c = minimize_canonical(m);
    CHECK(c.num_states() == 2);
    CHECK_FALSE(equivalent(m, c));
    CHECK(oracle::same_language(m, c));
  }
  SUBCASE("isomorphic machines serialize identically") {
    const MealyMachine t = toggle();
    const MealyMachine renamed(t.inputs(), t.outputs(), 2, 1, {1, 0}, {1, 0});
    CHECK(fingerprint(t) == fingerprint(renamed));
    CHECK(minimize_canonical(t) == minimize_canonical(renamed));
  }
}

TEST_CASE("random_mealy") {
  const Alphabet in({"a", "b"}), out({"x", "y"});
  CHECK(random_mealy(5, in, out, 1) == random_mealy(5, in, out, 1));
  const MealyMachine one = random_mealy(1, in, out, 4);
  CHECK(one.num_states() == 1);
  CHECK(one.transition_table() == std::vector<StateId>{0, 0});
  CHECK(minimize_canonical(random_mealy(10, in, out, 7)).num_states() == 10);
  CHECK_THROWS_AS(random_mealy(3, in, Alphabet({"x"}), 1), GenerationError);
}

TEST_CASE("refinement separators distinguish every state pair") {
  const MealyMachine m = random_mealy(9, Alphabet({"a", "b", "c"}), Alphabet({"x", "y"}), 21);
  const Refinement r = refine(m);
  CHECK(r.num_blocks == 9);
  CHECK(r.separators.size() <= 8);
  for (StateId p = 0; p < 9; ++p)
    for (StateId q = p + 1; q < 9; ++q) {
      bool split = false;
      for (const Word& s : r.separators) split |= run_word_from(m, p, s) != run_word_from(m, q, s);
      CHECK(split);
    }
}
