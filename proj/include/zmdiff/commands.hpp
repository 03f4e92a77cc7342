#pragma once

// The subcommands of the `zmdiff` tool. Each writes its report to `out`,
// diagnostics to `err`, and returns the process exit status:
//   0 success, 1 no solution / verification failure, 2 usage or malformed
//   input, 3 oracle budget exceeded.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zmdiff/document.hpp"
#include "zmdiff/oracle.hpp"

namespace zmdiff::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitNoSolution = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

enum class OutputFormat { kText, kJson };

struct CommandOptions {
  OutputFormat format = OutputFormat::kText;
  std::optional<std::int64_t> y0;       // overrides the document
  std::optional<std::int64_t> horizon;  // overrides the document
  std::vector<std::uint64_t> alpha;
  std::optional<std::uint64_t> x10;
  std::uint64_t max = 10;
  std::size_t oracle_n = 5;
  std::uint64_t budget = oracle::kDefaultBudget;
  std::vector<std::int64_t> candidate;
};

int cmd_classify(const ProblemDocument& doc, const CommandOptions& opt,
                 std::ostream& out, std::ostream& err);
int cmd_solve(const ProblemDocument& doc, const CommandOptions& opt,
              std::ostream& out, std::ostream& err);
int cmd_enumerate(const ProblemDocument& doc, const CommandOptions& opt,
                  std::ostream& out, std::ostream& err);
int cmd_verify(const ProblemDocument& doc, const CommandOptions& opt,
               std::ostream& out, std::ostream& err);
int cmd_oracle_check(const ProblemDocument& doc, const CommandOptions& opt,
                     std::ostream& out, std::ostream& err);

struct SweepCommandOptions {
  std::uint64_t m_max = 12;
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::size_t horizon = 5;
  std::uint64_t budget = oracle::kDefaultBudget;
  OutputFormat format = OutputFormat::kText;
};

int cmd_sweep(const SweepCommandOptions& opt, std::ostream& out, std::ostream& err);

// Parses "1,0,2" into digits. Throws Error(kInvalidArgument).
std::vector<std::uint64_t> parse_digit_list(const std::string& csv);
std::vector<std::int64_t> parse_integer_list(const std::string& csv);

}  // namespace zmdiff::cli
