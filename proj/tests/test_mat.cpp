#include "caal/mat.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace testing;

namespace {
const Alphabet sigma({"a", "b"});
const Alphabet xyz({"x", "y", "z"});
}  // namespace

TEST_CASE("cache is write-once") {
  MatCache cache;
  cache.insert(obs(sigma, xyz, "aa", "xy"));
  CHECK(str(xyz, *cache.lookup(w(sigma, "a"))) == "x");
  CHECK_FALSE(cache.lookup(w(sigma, "b")));
  CHECK_NOTHROW(cache.insert(obs(sigma, xyz, "aa", "xy")));
  CHECK_NOTHROW(cache.insert(obs(sigma, xyz, "ab", "xz")));
  CHECK_THROWS_AS(cache.insert(obs(sigma, xyz, "aa", "xz")), CacheConflict);
  CHECK(str(xyz, *cache.lookup(w(sigma, "aa"))) == "xy");
}

TEST_CASE("membership query with repeats") {
  const MealyMachine m = random_mealy(4, sigma, xyz, 12);
  SimulatedSystem sys(m, NoiseSpec{});
  MatCache cache;
  const RepeatsPolicy policy{5, 10, 0.8};
  CHECK(mat_mq(cache, sys, w(sigma, "aba"), policy) == run_word(m, w(sigma, "aba")));
  CHECK(sys.stats().symbols == 15);
  CHECK(mat_mq(cache, sys, w(sigma, "ab"), policy) == run_word(m, w(sigma, "ab")));
  CHECK(sys.stats().symbols == 15);
}

TEST_CASE("membership answers agree with the conflict-aware teacher without noise") {
  const MealyMachine m = random_mealy(6, sigma, xyz, 4);
  SimulatedSystem s1(m, NoiseSpec{}), s2(m, NoiseSpec{});
  MatCache cache;
  Reviser r(ObservationTree(sigma, xyz, UpdateStrategy::MostRecent), s2,
            ReviserConfig{RepeatsPolicy{}, SamplerParams{}, 10});
  for (const Word& i : oracle::all_words(2, 6)) {
    const Word a = mat_mq(cache, s1, i, RepeatsPolicy{});
    CHECK(a == std::get<Word>(r.mq(i)));
  }
  CHECK(s1.stats().tests == s2.stats().tests);
}

TEST_CASE("noise-free MAT learns every target") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MealyMachine target = random_mealy(3 + seed % 8, sigma, Alphabet({"0", "1"}), 40 + seed);
    for (LearnerKind kind : {LearnerKind::LStarRS, LearnerKind::KV}) {
      SimulatedSystem sys(target, NoiseSpec{});
      const LearnResult res = run_mat(learner_factory(kind, sigma, target.outputs()), sys,
                                      MatConfig{RepeatsPolicy{}, SamplerParams{3.0, 2, seed}, 500});
      CHECK(res.outcome == RunOutcome::Survived);
      REQUIRE(res.model);
      CHECK(oracle::same_language(*res.model, target));
      CHECK(res.restarts == 0);
      CHECK(res.eq_symbols <= sys.stats().symbols);
    }
  }
}

TEST_CASE("a contradicting answer ends MAT early") {
  // First test says "a" -> x, every later one says y.
  const Alphabet in({"a"}), out({"x", "y"});
  ScriptedSystem sys({w(out, "x"), w(out, "y")});
  std::vector<EventKind> kinds;
  const LearnResult res =
      run_mat(learner_factory(LearnerKind::LStarRS, in, out), sys, MatConfig{RepeatsPolicy{}, SamplerParams{}, 100},
              [&](const Event& e) { kinds.push_back(e.kind); });
  CHECK(res.outcome == RunOutcome::CacheConflict);
  CHECK(sys.stats().tests < 10);
  CHECK_FALSE(kinds.empty());
}

TEST_CASE("budget exhaustion is a timeout") {
  const MealyMachine target = random_mealy(8, sigma, Alphabet({"0", "1"}), 3);
  SimulatedSystem sys(target, NoiseSpec{});
  sys.set_symbol_budget(10);
  const LearnResult res = run_mat(learner_factory(LearnerKind::KV, sigma, target.outputs()), sys,
                                  MatConfig{RepeatsPolicy{}, SamplerParams{}, 2000});
  CHECK(res.outcome == RunOutcome::Timeout);
}
