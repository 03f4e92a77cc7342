#include "zmdiff/commands.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "zmdiff/solver.hpp"
#include "zmdiff/sweep.hpp"

namespace zmdiff::cli {

namespace {

using Json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnsolvable: return kExitNoSolution;
    case ErrorCode::kBudgetExceeded: return kExitBudget;
    default: return kExitUsage;
  }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

void kv(std::ostream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(16) << key << value << '\n' << std::right;
}

std::string join(const std::vector<Residue>& seq, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? sep : "") << seq[i].value();
  return os.str();
}

Json to_json(const std::vector<Residue>& seq) {
  Json arr = Json::array();
  for (const auto& x : seq) arr.push_back(x.value());
  return arr;
}

Json opt_json(const std::optional<std::uint32_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<Residue> resolve_y0(const ProblemDocument& doc, const CommandOptions& opt) {
  const auto raw = opt.y0 ? opt.y0 : doc.y0;
  if (!raw) return std::nullopt;
  return Residue(*raw, static_cast<std::uint64_t>(doc.m));
}

// Number of forcing terms f_0 .. f_{H-1} a report may use.
std::uint64_t resolve_horizon(const ProblemDocument& doc, const CommandOptions& opt) {
  const auto raw = opt.horizon ? opt.horizon : doc.horizon;
  const bool periodic = doc.f_period.has_value();
  if (!raw) {
    const auto available = static_cast<std::int64_t>(doc.f.size());
    return static_cast<std::uint64_t>(
        periodic ? kDefaultHorizon : std::min(kDefaultHorizon, available));
  }
  if (*raw < 1) throw Error(ErrorCode::kInvalidArgument, "horizon must be at least 1");
  if (!periodic && static_cast<std::size_t>(*raw) > doc.f.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "horizon " + std::to_string(*raw) + " exceeds the " +
                    std::to_string(doc.f.size()) + " forcing terms given without a period");
  }
  return static_cast<std::uint64_t>(*raw);
}

std::string verdict_text(const Classification& cls) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Classification::None>) {
          os << "none (d does not divide f_" << v.witness_index << ")";
        } else if constexpr (std::is_same_v<T, Classification::Finite>) {
          os << "finite (" << v.count << (v.count == 1 ? " solution)" : " solutions)");
        } else {
          os << "infinite (d = " << v.d << ", m'1 = " << v.m1_prime << ")";
        }
      },
      cls.verdict);
  return os.str();
}

Json verdict_json(const Classification& cls) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Classification::None>) {
          return {{"kind", "none"}, {"witness_index", v.witness_index}};
        } else if constexpr (std::is_same_v<T, Classification::Finite>) {
          return {{"kind", "finite"}, {"count", v.count}};
        } else {
          return {{"kind", "infinite"}, {"d", v.d}, {"m1_prime", v.m1_prime}};
        }
      },
      cls.verdict);
}

std::string initial_text(const InitialClassification& ic) {
  using IC = InitialClassification;
  if (std::holds_alternative<IC::Unique>(ic.verdict)) return "unique";
  if (std::holds_alternative<IC::InfinitelyMany>(ic.verdict)) return "infinitely many";
  const auto& none = std::get<IC::NoSolution>(ic.verdict);
  std::ostringstream os;
  if (const auto* w = std::get_if<IC::DivisibilityWitness>(&none.reason)) {
    os << "none (d does not divide f_" << w->index << ")";
  } else {
    const auto& c = std::get<IC::CompatibilityMismatch>(none.reason);
    os << "none (requires [y0]_" << c.required.modulus() << " = " << c.required.value()
       << ", got " << c.actual.value() << ")";
  }
  return os.str();
}

Json initial_json(const InitialClassification& ic) {
  using IC = InitialClassification;
  Json j;
  if (std::holds_alternative<IC::Unique>(ic.verdict)) {
    j["kind"] = "unique";
  } else if (std::holds_alternative<IC::InfinitelyMany>(ic.verdict)) {
    j["kind"] = "infinitely_many";
  } else {
    j["kind"] = "none";
    const auto& none = std::get<IC::NoSolution>(ic.verdict);
    if (const auto* w = std::get_if<IC::DivisibilityWitness>(&none.reason)) {
      j["reason"] = {{"kind", "divisibility"}, {"witness_index", w->index}};
    } else {
      const auto& c = std::get<IC::CompatibilityMismatch>(none.reason);
      j["reason"] = {{"kind", "compatibility"},
                     {"modulus", c.required.modulus()},
                     {"required", c.required.value()},
                     {"actual", c.actual.value()}};
    }
  }
  j["support_qualified"] = ic.support_qualified;
  return j;
}

std::string freedom_text(const GeneralSolution& gs) {
  std::ostringstream os;
  const auto free = gs.free_initial_modulus();
  const auto d = gs.lift_digit_bound();
  if (free > 1) {
    switch (gs.kind() == SolutionKind::kLifted ? gs.core_kind() : gs.kind()) {
      case SolutionKind::kExplicit: os << (d > 1 ? "X'_0" : "X_0"); break;
      default: os << (d > 1 ? "X'_{1,0}" : "X_{1,0}"); break;
    }
    os << " in Z_" << free << " (--x10)";
  }
  if (d > 1) {
    if (free > 1) os << "; ";
    const char* from = gs.pinned_first_digit() ? "1" : "0";
    os << "alpha_n in {0.." << d - 1 << "} for n >= " << from << " (--alpha)";
    if (gs.pinned_first_digit()) os << ", alpha_0 = " << *gs.pinned_first_digit();
  }
  if (free <= 1 && d == 1) os << "none (unique solution)";
  return os.str();
}

struct Solved {
  ProblemSpec spec;
  std::optional<Residue> y0;
  GeneralSolution solution;
  std::uint64_t row_length;
};

// Builds the solution family or returns the exit status of a failure.
std::variant<Solved, int> build_solution(const ProblemDocument& doc,
                                         const CommandOptions& opt, std::ostream& out,
                                         std::ostream& err) {
  const ProblemSpec spec = to_problem_spec(doc);
  const auto y0 = resolve_y0(doc, opt);
  const std::uint64_t horizon = resolve_horizon(doc, opt);
  std::optional<GeneralSolution> gs;
  try {
    gs = y0 ? solve_initial_problem(spec, *y0) : general_solution(spec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnsolvable) throw;
    if (opt.format == OutputFormat::kJson) {
      Json j{{"solvable", false}, {"reason", e.what()}, {"rows", Json::array()}};
      out << j.dump() << '\n';
    } else {
      out << e.what() << '\n';
    }
    err << "no solution\n";
    return kExitNoSolution;
  }
  const std::uint64_t k = gs->lookahead();
  if (horizon <= k) {
    throw Error(ErrorCode::kInvalidArgument,
                "horizon " + std::to_string(horizon) + " leaves no evaluable terms (lookahead " +
                    std::to_string(k) + ")");
  }
  return Solved{spec, y0, *gs, horizon - k};
}

}  // namespace

std::vector<std::uint64_t> parse_digit_list(const std::string& csv) {
  std::vector<std::uint64_t> out;
  for (auto v : parse_integer_list(csv)) {
    if (v < 0) throw Error(ErrorCode::kInvalidArgument, "digits must be non-negative");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

std::vector<std::int64_t> parse_integer_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = std::min(csv.find(',', pos), csv.size());
    std::string item = csv.substr(pos, comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::kInvalidArgument, "not an integer list: '" + csv + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

int cmd_classify(const ProblemDocument& doc, const CommandOptions& opt,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const ProblemSpec spec = to_problem_spec(doc);
    const auto y0 = resolve_y0(doc, opt);
    const Structure st = analyze(spec);
    const Classification cls = classify_equation(spec);
    std::optional<InitialClassification> ic;
    if (y0) ic = classify_initial_problem(spec, *y0);

    if (opt.format == OutputFormat::kJson) {
      Json j;
      j["command"] = "classify";
      j["m"] = spec.m();
      j["a"] = spec.a();
      j["b"] = spec.b();
      j["d"] = st.d;
      j["m1"] = st.m1;
      j["m2"] = st.m2;
      j["ind_b2"] = opt_json(st.indB2);
      j["mprime"] = st.mprime;
      j["m1prime"] = st.m1prime;
      j["m2prime"] = st.m2prime;
      j["ind_b2prime"] = opt_json(st.indB2prime);
      j["lookahead"] = st.lookahead;
      j["forced_tail"] = st.forced_tail;
      j["verdict"] = verdict_json(cls);
      j["support_qualified"] = cls.support_qualified;
      j["compatibility"] =
          st.compatibility ? Json{{"modulus", st.compatibility->modulus()},
                                  {"value", st.compatibility->value()}}
                           : Json(nullptr);
      if (ic) {
        j["y0"] = y0->value();
        j["initial"] = initial_json(*ic);
      }
      out << j.dump() << '\n';
    } else {
      auto ind = [](const std::optional<std::uint32_t>& v) {
        return v ? std::to_string(*v) : std::string("-");
      };
      kv(out, "equation", "[" + std::to_string(spec.b()) + "] X_{n+1} = [" +
                              std::to_string(spec.a()) + "] X_n + F_n over Z_" +
                              std::to_string(spec.m()));
      kv(out, "d", std::to_string(st.d));
      kv(out, "m1 m2", std::to_string(st.m1) + " " + std::to_string(st.m2));
      kv(out, "ind(B2)", ind(st.indB2));
      kv(out, "m' m'1 m'2", std::to_string(st.mprime) + " " + std::to_string(st.m1prime) +
                                " " + std::to_string(st.m2prime));
      kv(out, "ind(B'2)", ind(st.indB2prime));
      kv(out, "lookahead", std::to_string(st.lookahead));
      kv(out, "verdict", verdict_text(cls));
      if (st.compatibility) {
        kv(out, "compatibility", "[y0]_" + std::to_string(st.compatibility->modulus()) +
                                     " = " + std::to_string(st.compatibility->value()));
      }
      kv(out, "support", cls.support_qualified
                             ? "qualified: divisibility checked on the " +
                                   std::to_string(doc.f.size()) + " given terms only"
                             : "exact");
      if (ic) kv(out, "initial y0=" + std::to_string(y0->value()), initial_text(*ic));
    }
    const bool unsolvable = cls.is_none() || (ic && !ic->is_solvable());
    return unsolvable ? kExitNoSolution : kExitOk;
  });
}

int cmd_solve(const ProblemDocument& doc, const CommandOptions& opt, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&]() -> int {
    auto built = build_solution(doc, opt, out, err);
    if (const int* code = std::get_if<int>(&built)) return *code;
    const auto& s = std::get<Solved>(built);
    const SolutionParameters params{opt.x10.value_or(0), opt.alpha};
    const auto seq = s.solution.prefix(params, s.row_length);

    if (opt.format == OutputFormat::kJson) {
      Json j;
      j["command"] = "solve";
      j["solvable"] = true;
      j["kind"] = to_string(s.solution.kind());
      j["modulus"] = s.solution.modulus();
      j["lookahead"] = s.solution.lookahead();
      j["free_initial_modulus"] = s.solution.free_initial_modulus();
      j["lift_digit_bound"] = s.solution.lift_digit_bound();
      j["pinned_first_digit"] = s.solution.pinned_first_digit()
                                    ? Json(*s.solution.pinned_first_digit())
                                    : Json(nullptr);
      j["y0"] = s.y0 ? Json(s.y0->value()) : Json(nullptr);
      j["x10"] = params.free_initial;
      j["alpha"] = params.alpha;
      j["sequence"] = to_json(seq);
      out << j.dump() << '\n';
    } else {
      kv(out, "kind", to_string(s.solution.kind()));
      kv(out, "lookahead", std::to_string(s.solution.lookahead()));
      kv(out, "freedom", freedom_text(s.solution));
      out << std::setw(6) << "n" << std::setw(12) << "X_n" << '\n';
      for (std::size_t n = 0; n < seq.size(); ++n) {
        out << std::setw(6) << n << std::setw(12) << seq[n].value() << '\n';
      }
    }
    return kExitOk;
  });
}

int cmd_enumerate(const ProblemDocument& doc, const CommandOptions& opt,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    auto built = build_solution(doc, opt, out, err);
    if (const int* code = std::get_if<int>(&built)) return *code;
    const auto& s = std::get<Solved>(built);
    const GeneralSolution& gs = s.solution;
    const std::uint64_t d = gs.lift_digit_bound();
    const std::size_t L = s.row_length;
    const std::size_t first_free_digit = gs.pinned_first_digit() ? 1 : 0;

    struct Row {
      SolutionParameters params;
      std::vector<Residue> values;
    };
    std::vector<Row> rows;
    bool more = false;
    for (std::uint64_t free = 0; free < gs.free_initial_modulus() && !more; ++free) {
      std::vector<std::uint64_t> alpha(d > 1 ? L : 0, 0);
      while (true) {
        if (rows.size() == opt.max) {
          more = true;
          break;
        }
        SolutionParameters params{free, alpha};
        rows.push_back({params, gs.prefix(params, L)});
        // Odometer over alpha_{first_free_digit} .. alpha_{L-1}; the last
        // index varies fastest.
        std::size_t pos = alpha.size();
        while (pos > first_free_digit && alpha[pos - 1] == d - 1) alpha[--pos] = 0;
        if (pos <= first_free_digit) break;
        ++alpha[pos - 1];
      }
    }
    const bool infinite = d > 1;
    std::string flag;
    if (infinite) {
      flag = "truncated: infinite family";
    } else if (more) {
      flag = "truncated";
    }

    if (opt.format == OutputFormat::kJson) {
      Json j;
      j["command"] = "enumerate";
      j["solvable"] = true;
      j["kind"] = to_string(gs.kind());
      j["row_length"] = L;
      j["truncated"] = infinite || more;
      j["infinite_family"] = infinite;
      Json arr = Json::array();
      for (const auto& r : rows) {
        arr.push_back({{"x10", r.params.free_initial},
                       {"alpha", r.params.alpha},
                       {"sequence", to_json(r.values)}});
      }
      j["rows"] = std::move(arr);
      out << j.dump() << '\n';
    } else {
      kv(out, "kind", to_string(gs.kind()));
      kv(out, "freedom", freedom_text(gs));
      kv(out, "rows", std::to_string(rows.size()) + (flag.empty() ? "" : " (" + flag + ")"));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        out << std::setw(4) << i << "  x10=" << rows[i].params.free_initial;
        if (d > 1) {
          out << " alpha=";
          for (std::size_t n = 0; n < rows[i].params.alpha.size(); ++n) {
            const auto digit = (n == 0 && gs.pinned_first_digit())
                                   ? *gs.pinned_first_digit()
                                   : rows[i].params.alpha[n];
            out << digit;
          }
        }
        out << "  :  " << join(rows[i].values) << '\n';
      }
    }
    return kExitOk;
  });
}

int cmd_verify(const ProblemDocument& doc, const CommandOptions& opt, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&]() -> int {
    const ProblemSpec spec = to_problem_spec(doc);
    const auto y0 = resolve_y0(doc, opt);
    if (opt.candidate.size() < 2) {
      throw Error(ErrorCode::kInvalidArgument, "candidate needs at least two terms");
    }
    if (!spec.forcing().has_term(opt.candidate.size() - 2)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "candidate of length " + std::to_string(opt.candidate.size()) +
                      " needs forcing terms through f_" +
                      std::to_string(opt.candidate.size() - 2));
    }
    std::vector<Residue> seq;
    for (auto v : opt.candidate) seq.emplace_back(v, spec.m());
    const auto verdict = oracle::verify_solution(spec, seq, y0);

    if (opt.format == OutputFormat::kJson) {
      Json j{{"command", "verify"}, {"pass", verdict.ok}};
      j["first_failure"] =
          verdict.first_failure ? Json(*verdict.first_failure) : Json(nullptr);
      j["initial_mismatch"] = verdict.initial_mismatch;
      out << j.dump() << '\n';
    } else if (verdict.ok) {
      out << "pass\n";
    } else if (verdict.initial_mismatch) {
      out << "fail: X_0 = " << seq.front().value() << " differs from y0 = "
          << y0->value() << '\n';
    } else {
      const auto n = *verdict.first_failure;
      out << "fail at transition " << n << ": B X_" << n + 1 << " != A X_" << n
          << " + F_" << n << '\n';
    }
    return verdict.ok ? kExitOk : kExitNoSolution;
  });
}

int cmd_oracle_check(const ProblemDocument& doc, const CommandOptions& opt,
                     std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const ProblemSpec spec = to_problem_spec(doc);
    const auto y0 = resolve_y0(doc, opt);
    const std::size_t N = opt.oracle_n;
    if (N < 1) throw Error(ErrorCode::kInvalidArgument, "--oracle-n must be at least 1");
    const Structure st = analyze(spec);
    const std::uint64_t T = st.forced_tail;
    if (T >= N) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--oracle-n must exceed the forced tail " + std::to_string(T));
    }

    // The oracle sees f_0 .. f_{N-2}; the prediction is made for exactly that
    // window so both sides reason about the same data.
    std::vector<Residue> window;
    for (std::size_t n = 0; n + 1 < N; ++n) window.push_back(spec.forcing().term(n));
    const ProblemSpec windowed(spec.m(), static_cast<std::int64_t>(spec.a()),
                               static_cast<std::int64_t>(spec.b()),
                               SequenceSpec(spec.m(), std::move(window)));

    std::uint64_t theory = 0;
    auto pow_d = [&](std::uint64_t e) {
      std::uint64_t r = 1;
      while (e-- > 0) r *= st.d;
      return r;
    };
    if (y0) {
      const auto ic = classify_initial_problem(windowed, *y0);
      if (std::holds_alternative<InitialClassification::Unique>(ic.verdict)) theory = 1;
      if (std::holds_alternative<InitialClassification::InfinitelyMany>(ic.verdict)) {
        theory = pow_d(N - T - 1);
      }
    } else {
      const auto cls = classify_equation(windowed);
      if (const auto* f = std::get_if<Classification::Finite>(&cls.verdict)) theory = f->count;
      if (const auto* inf = std::get_if<Classification::Infinite>(&cls.verdict)) {
        theory = inf->m1_prime * pow_d(N - T);
      }
    }
    const std::uint64_t observed =
        oracle::count_truncated_prefixes(spec, N, T, y0, opt.budget);
    const bool agree = theory == observed;

    if (opt.format == OutputFormat::kJson) {
      Json j{{"command", "oracle-check"}, {"horizon", N},       {"forced_tail", T},
             {"theoretical", theory},     {"oracle", observed}, {"agree", agree}};
      j["y0"] = y0 ? Json(y0->value()) : Json(nullptr);
      out << j.dump() << '\n';
    } else {
      kv(out, "horizon", std::to_string(N));
      kv(out, "forced tail", std::to_string(T));
      kv(out, "theoretical", std::to_string(theory));
      kv(out, "oracle", std::to_string(observed));
      kv(out, "verdict", agree ? "agree" : "DISAGREE");
    }
    return agree ? kExitOk : kExitNoSolution;
  });
}

int cmd_sweep(const SweepCommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (opt.m_max < 2) throw Error(ErrorCode::kInvalidArgument, "--m-max must be at least 2");
    sweep::OracleSweepOptions oracle_opt;
    oracle_opt.m_max = opt.m_max;
    oracle_opt.trials = opt.trials;
    oracle_opt.seed = opt.seed;
    oracle_opt.horizon = opt.horizon;
    oracle_opt.budget = opt.budget;
    const auto oracle_report = sweep::run_oracle_sweep(oracle_opt);

    sweep::UniquenessSweepOptions uniqueness_opt;
    uniqueness_opt.m_max = opt.m_max;
    uniqueness_opt.trials = opt.trials;
    uniqueness_opt.seed = opt.seed;
    const auto uniqueness_report = sweep::run_uniqueness_sweep(uniqueness_opt);

    const bool passed = oracle_report.passed() && uniqueness_report.passed();
    if (opt.format == OutputFormat::kJson) {
      auto summary = [](const sweep::SweepReport& r) {
        Json list = Json::array();
        for (const auto& d : r.discrepancies) {
          list.push_back({{"m", d.m},
                          {"a", d.a},
                          {"b", d.b},
                          {"trial", d.trial},
                          {"y0", d.y0 ? Json(*d.y0) : Json(nullptr)},
                          {"what", d.what}});
        }
        return Json{{"passed", r.passed()},
                    {"sequences_verified", r.total_sequences()},
                    {"counts_compared", r.total_counts()},
                    {"discrepancies", std::move(list)}};
      };
      Json j{{"command", "sweep"},
             {"m_max", opt.m_max},
             {"trials", opt.trials},
             {"seed", opt.seed},
             {"oracle", summary(oracle_report)},
             {"uniqueness", summary(uniqueness_report)},
             {"passed", passed}};
      out << j.dump() << '\n';
    } else {
      sweep::print_report(out, "oracle agreement (horizon " + std::to_string(opt.horizon) + ")",
                          oracle_report);
      out << '\n';
      sweep::print_report(out, "uniqueness criteria", uniqueness_report);
    }
    return passed ? kExitOk : kExitNoSolution;
  });
}

}  // namespace zmdiff::cli
