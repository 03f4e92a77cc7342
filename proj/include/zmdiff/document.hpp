#pragma once

// The JSON problem document read by the command line tool:
//
//   {"m": 6, "a": 2, "b": 3, "f": [1, 2, 0, 1], "f_period": 4, "y0": 4,
//    "horizon": 8}
//
// m, a, b and f are required; the rest are optional. Unknown fields and
// non-integer values are rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zmdiff/problem.hpp"

namespace zmdiff {

struct ProblemDocument {
  std::int64_t m = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::vector<std::int64_t> f;
  std::optional<std::int64_t> f_period;
  std::optional<std::int64_t> y0;
  std::optional<std::int64_t> horizon;

  bool operator==(const ProblemDocument&) const = default;
};

inline constexpr std::int64_t kDefaultHorizon = 8;

// Throws Error(kInvalidArgument) naming the offending field.
ProblemDocument parse_document(std::string_view text);

// Canonical single-line JSON with fields in declaration order; absent
// optionals are omitted.
std::string serialize_document(const ProblemDocument& doc);

ProblemSpec to_problem_spec(const ProblemDocument& doc);

}  // namespace zmdiff
