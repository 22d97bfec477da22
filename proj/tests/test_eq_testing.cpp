#include <set>

#include "caal/eq_testing.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace testing;

TEST_CASE("characterization set") {
  const MealyMachine one(Alphabet({"a"}), Alphabet({"x"}), 1, 0, {0}, {0});
  CHECK(char_set(one).empty());
  CHECK(char_set(toggle()) == std::vector<Word>{Word{0}});

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const MealyMachine h = random_mealy(n, Alphabet({"a", "b"}), Alphabet({"x", "y"}), seed);
    const auto W = char_set(h);
    CHECK(W.size() <= n - 1);
    for (StateId p = 0; p < n; ++p)
      for (StateId q = p + 1; q < n; ++q) {
        bool split = false;
        for (const Word& s : W) split |= run_word_from(h, p, s) != run_word_from(h, q, s);
        CHECK(split);
      }
  }
}

TEST_CASE("transition cover") {
  const auto cover = transition_cover(toggle());
  CHECK(cover == std::vector<Word>{Word{0}, Word{0, 0}});
  const MealyMachine m = random_mealy(6, Alphabet({"a", "b", "c"}), Alphabet({"x", "y"}), 3);
  const auto c = transition_cover(m);
  CHECK(c.size() == 18);
  CHECK(c[m.initial() * 3 + 0] == Word{0});
  const MealyMachine unreachable(Alphabet({"a"}), Alphabet({"x"}), 2, 0, {0, 1}, {0, 0});
  CHECK_THROWS(transition_cover(unreachable));
}

TEST_CASE("sampler") {
  SUBCASE("degenerate parameters") {
    const MealyMachine one(Alphabet({"a"}), Alphabet({"x"}), 1, 0, {0}, {0});
    TestSampler s(one, SamplerParams{0.0, 0, 1});
    Rng rng(1);
    for (int k = 0; k < 20; ++k) CHECK(s.sample(rng) == Word{0});
  }
  SUBCASE("golden draws on the toggle at seed 42") {
    TestSampler s(toggle(), SamplerParams{3.0, 2, 42});
    Rng rng(42);
    std::vector<std::string> draws;
    for (int k = 0; k < 8; ++k) draws.push_back(str(Alphabet({"a"}), s.sample(rng)));
    const std::vector<std::string> golden{"aaa",   "aaa",      "aaa", "aa", "aaaa",
                                          "aaaaa", "aaaaaaaa", std::string(28, 'a')};
    CHECK(draws == golden);
  }
  SUBCASE("every cover word shows up as a prefix") {
    const MealyMachine m = random_mealy(8, Alphabet({"a", "b", "c"}), Alphabet({"x", "y"}), 17);
    TestSampler s(m, SamplerParams{3.0, 2, 5});
    Rng rng(5);
    std::set<std::size_t> hit;
    for (int k = 0; k < 10000; ++k) {
      const Word x = s.sample(rng);
      for (std::size_t c = 0; c < s.cover().size(); ++c) {
        const Word& p = s.cover()[c];
        if (x.size() >= p.size() && std::equal(p.begin(), p.end(), x.begin())) hit.insert(c);
      }
    }
    CHECK(hit.size() == s.cover().size());
  }
  SUBCASE("deterministic in the seed") {
    const MealyMachine m = random_mealy(5, Alphabet({"a", "b"}), Alphabet({"x", "y"}), 2);
    TestSampler s(m, SamplerParams{});
    Rng r1(9), r2(9);
    for (int k = 0; k < 50; ++k) CHECK(s.sample(r1) == s.sample(r2));
  }
}

TEST_CASE("single-transition faults are caught within 10000 samples") {
  const Alphabet in({"a", "b"}), out({"x", "y"});
  int pairs = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const MealyMachine target = random_mealy(2 + seed % 4, in, out, 100 + seed);
    const std::size_t n = target.num_states();
    for (std::size_t t = 0; t < n * 2; ++t) {
      // every single-transition fault: output flip, or redirected target
      std::vector<MealyMachine> faults;
      auto l = target.output_table();
      l[t] ^= 1;
      faults.emplace_back(in, out, n, target.initial(), target.transition_table(), l);
      for (StateId r = 0; r < n; ++r) {
        auto d = target.transition_table();
        if (d[t] == r) continue;
        d[t] = r;
        faults.emplace_back(in, out, n, target.initial(), d, target.output_table());
      }
      for (const MealyMachine& h : faults) {
        if (oracle::same_language(h, target)) continue;
        ++pairs;
        TestSampler s(h, SamplerParams{3.0, 2, 0});
        Rng rng(seed * 1000 + t);
        bool found = false;
        for (int k = 0; k < 10000 && !found; ++k) {
          const Word x = s.sample(rng);
          found = run_word(h, x) != run_word(target, x);
        }
        CHECK(found);
      }
    }
  }
  CHECK(pairs > 50);
}
