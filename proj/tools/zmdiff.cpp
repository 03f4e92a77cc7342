// zmdiff: classify, solve, enumerate and check first-order linear difference
// equations  b X_{n+1} = a X_n + f_n  over Z_m.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "zmdiff/commands.hpp"
#include "zmdiff/document.hpp"
#include "zmdiff/error.hpp"

namespace {

using namespace zmdiff;
using namespace zmdiff::cli;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RawOptions {
  std::string input;
  std::string format = "text";
  std::optional<std::int64_t> y0;
  std::optional<std::int64_t> horizon;
  std::string alpha;
  std::optional<std::uint64_t> x10;
  std::uint64_t max = 10;
  std::size_t oracle_n = 5;
  std::uint64_t budget = oracle::kDefaultBudget;
  std::string candidate;
  std::uint64_t seed = 0;
  std::uint64_t m_max = 12;
  std::size_t trials = 5;
};

OutputFormat parse_format(const std::string& s) {
  return s == "json" ? OutputFormat::kJson : OutputFormat::kText;
}

CLI::App* add_problem_command(CLI::App& app, const char* name, const char* help,
                              RawOptions& raw) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("-i,--input", raw.input, "Problem document (JSON); '-' or omitted reads stdin");
  sub->add_option("--y0", raw.y0, "Initial value; overrides the document");
  sub->add_option("--format", raw.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order linear difference equations over Z_m"};
  app.require_subcommand(1);
  RawOptions raw;

  auto* classify = add_problem_command(app, "classify", "Structure and solution verdict", raw);
  auto* solve = add_problem_command(app, "solve", "One member of the solution family", raw);
  auto* enumerate =
      add_problem_command(app, "enumerate", "List solution prefixes in canonical order", raw);
  auto* verify = add_problem_command(app, "verify", "Check a candidate sequence", raw);
  auto* oracle_check = add_problem_command(
      app, "oracle-check", "Compare the predicted solution count with brute force", raw);
  auto* sweep = app.add_subcommand("sweep", "Cross-check the solver over all small problems");

  for (auto* sub : {solve, enumerate}) {
    sub->add_option("--horizon", raw.horizon, "Number of forcing terms to use");
  }
  solve->add_option("--x10", raw.x10, "Free initial residue");
  solve->add_option("--alpha", raw.alpha, "Lift digits alpha_0,alpha_1,...");
  enumerate->add_option("--max", raw.max, "Maximum number of rows");
  verify->add_option("--candidate", raw.candidate, "Comma-separated X_0,X_1,...")->required();
  oracle_check->add_option("--oracle-n", raw.oracle_n, "Prefix length N");
  oracle_check->add_option("--budget", raw.budget, "Maximum explored oracle states");
  sweep->add_option("--m-max", raw.m_max, "Largest modulus");
  sweep->add_option("--trials", raw.trials, "Random forcings per (m, a, b)");
  sweep->add_option("--seed", raw.seed, "Random seed");
  sweep->add_option("--oracle-n", raw.oracle_n, "Oracle prefix length N");
  sweep->add_option("--budget", raw.budget, "Maximum explored oracle states per cell");
  sweep->add_option("--format", raw.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      SweepCommandOptions opt;
      opt.m_max = raw.m_max;
      opt.trials = raw.trials;
      opt.seed = raw.seed;
      opt.horizon = raw.oracle_n;
      opt.budget = raw.budget;
      opt.format = parse_format(raw.format);
      return cmd_sweep(opt, std::cout, std::cerr);
    }

    CommandOptions opt;
    opt.format = parse_format(raw.format);
    opt.y0 = raw.y0;
    opt.horizon = raw.horizon;
    if (!raw.alpha.empty()) opt.alpha = parse_digit_list(raw.alpha);
    opt.x10 = raw.x10;
    opt.max = raw.max;
    opt.oracle_n = raw.oracle_n;
    opt.budget = raw.budget;
    if (!raw.candidate.empty()) opt.candidate = parse_integer_list(raw.candidate);

    const ProblemDocument doc = parse_document(read_input(raw.input));
    if (classify->parsed()) return cmd_classify(doc, opt, std::cout, std::cerr);
    if (solve->parsed()) return cmd_solve(doc, opt, std::cout, std::cerr);
    if (enumerate->parsed()) return cmd_enumerate(doc, opt, std::cout, std::cerr);
    if (verify->parsed()) return cmd_verify(doc, opt, std::cout, std::cerr);
    return cmd_oracle_check(doc, opt, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kBudgetExceeded ? kExitBudget : kExitUsage;
  }
}
