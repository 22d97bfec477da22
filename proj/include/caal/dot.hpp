#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "caal/mealy.hpp"

namespace caal {

// Accepted DOT subset:
//   digraph name { ... }
//   node declarations            s0 [shape="circle" label="s0"];
//   transitions                  s0 -> s1 [label="in / out"];
//   initial marker (optional)    __start0 -> s0;
// Without a marker the first declared node is initial. Labels split on the
// first '/', both sides trimmed. Alphabets are the sets of symbols used.
// Errors are ParseError naming the offending line.
MealyMachine parse_dot(std::string_view text);
MealyMachine load_dot(const std::filesystem::path& path);

// Always emits the __start0 marker; states are named s0..s{n-1}.
std::string write_dot(const MealyMachine& m);

}  // namespace caal
