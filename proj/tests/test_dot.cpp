#include <filesystem>

#include "caal/dot.hpp"
#include "caal/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace testing;

namespace {

std::string error_of(std::string_view text) {
  try {
    parse_dot(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("toggle round-trips through DOT") {
  const MealyMachine t = toggle();
  const MealyMachine back = parse_dot(write_dot(t));
  CHECK(back == t);
}

TEST_CASE("random machines round-trip structurally") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MealyMachine m = random_mealy(1 + seed % 7, Alphabet({"a", "b", "c"}), Alphabet({"0", "1"}), seed);
    const MealyMachine back = parse_dot(write_dot(m));
    CHECK(back.num_states() == m.num_states());
    CHECK(oracle::same_language(back, m));
  }
}

TEST_CASE("labels are split on '/' and trimmed") {
  const MealyMachine m = parse_dot(R"(digraph g {
    q0 [shape="circle"];
    __start0 -> q0;
    q0 -> q0 [label="  a /  x "];
  })");
  CHECK(m.inputs().symbols() == std::vector<std::string>{"a"});
  CHECK(m.outputs().symbols() == std::vector<std::string>{"x"});
}

TEST_CASE("initial marker and first-declared fallback") {
  const char* marked = R"(digraph g {
    s0; s1;
    __start0 [label="" shape="none"];
    __start0 -> s1;
    s0 -> s1 [label="a/x"]; s1 -> s0 [label="a/y"];
  })";
  const MealyMachine m = parse_dot(marked);
  CHECK(str(m.outputs(), run_word(m, Word{0, 0})) == "yx");

  const char* unmarked = R"(digraph g {
    s0 -> s1 [label="a/x"]; s1 -> s0 [label="a/y"];
  })";
  const MealyMachine u = parse_dot(unmarked);
  CHECK(str(u.outputs(), run_word(u, Word{0, 0})) == "xy");
}

TEST_CASE("parse errors name the line") {
  SUBCASE("incomplete transition function") {
    const std::string e = error_of("digraph g {\n q0 -> q1 [label=\"a/x\"];\n q0 -> q0 [label=\"b/x\"];\n"
                                   " q1 -> q0 [label=\"a/y\"];\n}\n");
    CHECK(e == "line 5: incomplete transition function at q1/b");
  }
  SUBCASE("malformed label") {
    CHECK(error_of("digraph g {\n q0 -> q0 [label=\"a x\"];\n}") ==
          "line 2: malformed label \"a x\": missing '/'");
    CHECK(error_of("digraph g {\n q0 -> q0 [label=\"a/x/y\"];\n}").starts_with("line 2: malformed label"));
    CHECK(error_of("digraph g {\n q0 -> q0 [label=\" /x\"];\n}").starts_with("line 2: malformed label"));
  }
  SUBCASE("missing states") {
    CHECK(error_of("digraph g {\n}\n").starts_with("line 2: missing initial state"));
  }
  SUBCASE("nondeterminism") {
    CHECK(error_of("digraph g {\n q0 -> q0 [label=\"a/x\"];\n q0 -> q0 [label=\"a/y\"];\n}")
              .starts_with("line 3: nondeterministic transition at q0/a"));
  }
  SUBCASE("not a digraph") { CHECK(error_of("graph g {}").starts_with("line 1:")); }
}

TEST_CASE("shipped targets load and are minimal") {
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(CAAL_DATA_DIR) / "targets")) {
    const MealyMachine m = load_dot(e.path());
    CHECK(minimize_canonical(m).num_states() == m.num_states());
    CHECK(m.inputs().size() == 3);
    CHECK(m.outputs().size() == 2);
  }
  CHECK_THROWS_AS(load_dot("/nonexistent/x.dot"), ConfigError);
}
