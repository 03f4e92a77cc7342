#include "zmdiff/sweep.hpp"

#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "zmdiff/solver.hpp"

namespace zmdiff::sweep {

namespace {

Rng cell_rng(std::uint64_t seed, std::uint64_t m, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(b)};
  return Rng(seq);
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::string seq_string(const std::vector<Residue>& seq) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? "," : "") << seq[i].value();
  os << ']';
  return os.str();
}

std::vector<SolutionParameters> digit_samples(Rng& rng, std::uint64_t free_initial,
                                              std::uint64_t d, std::size_t length) {
  std::vector<SolutionParameters> out;
  out.push_back({free_initial, {}});
  if (d == 1) return out;
  out.push_back({free_initial, std::vector<std::uint64_t>(length, d - 1)});
  for (int i = 0; i < 2; ++i) {
    std::vector<std::uint64_t> alpha(length);
    for (auto& digit : alpha) digit = draw(rng, d);
    out.push_back({free_initial, std::move(alpha)});
  }
  return out;
}

class Recorder {
 public:
  Recorder(SweepReport& report, ModulusSummary& row) : report_(report), row_(row) {}

  void fail(std::uint64_t a, std::uint64_t b, std::size_t trial,
            std::optional<std::uint64_t> y0, std::string what) {
    report_.discrepancies.push_back({row_.m, a, b, trial, y0, std::move(what)});
    ++row_.discrepancies;
  }

  // Returns false (and records) when the sequence violates the equation.
  bool verify(const ProblemSpec& spec, const std::vector<Residue>& seq,
              std::optional<Residue> y0, std::size_t trial) {
    ++row_.sequences_verified;
    const auto verdict = oracle::verify_solution(spec, seq, y0);
    if (verdict.ok) return true;
    std::ostringstream os;
    os << "solver sequence " << seq_string(seq) << " fails at index "
       << *verdict.first_failure;
    fail(spec.a(), spec.b(), trial, y0 ? std::optional(y0->value()) : std::nullopt,
         os.str());
    return false;
  }

  void compare_count(std::uint64_t a, std::uint64_t b, std::size_t trial,
                     std::optional<std::uint64_t> y0, std::uint64_t expected,
                     std::uint64_t got) {
    ++row_.counts_compared;
    if (expected == got) return;
    fail(a, b, trial, y0,
         "truncated prefix count: theory " + std::to_string(expected) + ", oracle " +
             std::to_string(got));
  }

 private:
  SweepReport& report_;
  ModulusSummary& row_;
};

void check_oracle_cell(const OracleSweepOptions& opt, std::uint64_t m, std::uint64_t a,
                       std::uint64_t b, Recorder& rec, ModulusSummary& row) {
  Rng rng = cell_rng(opt.seed, m, a, b);
  const std::size_t N = opt.horizon;
  const std::uint64_t d = gcd3(a, b, m);
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const bool divisible = trial % 2 == 1;
    const ProblemSpec spec(
        m, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
        random_periodic_forcing(rng, m, N > 1 ? N - 1 : 1, divisible ? d : 1));
    const Structure st = analyze(spec);
    const Classification cls = classify_equation(spec);
    const std::uint64_t T = st.forced_tail;
    if (T >= N) {
      rec.fail(a, b, trial, std::nullopt,
               "horizon " + std::to_string(N) + " too short for forced tail " +
                   std::to_string(T));
      continue;
    }

    std::uint64_t expected = 0;
    if (const auto* f = std::get_if<Classification::Finite>(&cls.verdict)) {
      expected = f->count;
    } else if (const auto* inf = std::get_if<Classification::Infinite>(&cls.verdict)) {
      expected = inf->m1_prime * ipow(inf->d, N - T);
    }
    rec.compare_count(a, b, trial, std::nullopt, expected,
                      oracle::count_truncated_prefixes(spec, N, T, std::nullopt,
                                                       opt.budget));

    if (!cls.is_none()) {
      ++row.solvable;
      const GeneralSolution gs = general_solution(spec);
      if (gs.forced_tail() != T || gs.lookahead() != st.lookahead) {
        rec.fail(a, b, trial, std::nullopt, "solver and structure disagree on lookahead");
      }
      std::set<std::uint64_t> initial_values;
      for (std::uint64_t free = 0; free < gs.free_initial_modulus(); ++free) {
        for (const auto& params : digit_samples(rng, free, gs.lift_digit_bound(), N)) {
          const auto seq = gs.prefix(params, N);
          rec.verify(spec, seq, std::nullopt, trial);
          if (params.alpha.empty()) initial_values.insert(seq.front().value());
        }
      }
      if (initial_values.size() != gs.free_initial_modulus()) {
        rec.fail(a, b, trial, std::nullopt,
                 "free initial residues do not give distinct solutions");
      }
    }

    if (d == 1 && st.m2 != 1 && st.compatibility) {
      // Every solution prefix starts in the compatibility class mod m2.
      std::set<std::uint64_t> projected;
      oracle::for_each_prefix(spec, N, std::nullopt, opt.budget,
                              [&](std::span<const Residue> seq) {
                                projected.insert(seq.front().value() % st.m2);
                                return true;
                              });
      if (projected != std::set<std::uint64_t>{st.compatibility->value()}) {
        rec.fail(a, b, trial, std::nullopt,
                 "oracle initial values do not project onto the compatibility residue");
      }
    }

    if (!opt.initial_problems) continue;
    for (std::uint64_t y = 0; y < m; ++y) {
      const Residue y0(static_cast<std::int64_t>(y), m);
      const auto ic = classify_initial_problem(spec, y0);
      std::uint64_t expected_pinned = 0;
      if (std::holds_alternative<InitialClassification::Unique>(ic.verdict)) {
        expected_pinned = 1;
      } else if (std::holds_alternative<InitialClassification::InfinitelyMany>(ic.verdict)) {
        expected_pinned = ipow(d, N - T - 1);
      }
      if (ic.is_solvable() && cls.is_none()) {
        rec.fail(a, b, trial, y, "initial-problem verdict contradicts the equation verdict");
      }
      rec.compare_count(a, b, trial, y, expected_pinned,
                        oracle::count_truncated_prefixes(spec, N, T, y0, opt.budget));
      if (!ic.is_solvable()) continue;
      const GeneralSolution sol = solve_initial_problem(spec, y0);
      for (const auto& params : digit_samples(rng, 0, sol.lift_digit_bound(), N)) {
        rec.verify(spec, sol.prefix(params, N), y0, trial);
      }
    }
  }
}

void check_uniqueness_cell(const UniquenessSweepOptions& opt, const Factorization& fact,
                          std::uint64_t a, std::uint64_t b, Recorder& rec,
                          ModulusSummary& row) {
  const std::uint64_t m = fact.n;
  Rng rng = cell_rng(opt.seed, m, a, b);
  const auto ia = static_cast<std::int64_t>(a);
  const auto ib = static_cast<std::int64_t>(b);
  const ProblemSpec homogeneous(
      m, ia, ib, SequenceSpec(m, {Residue::zero(m)}, std::uint64_t{1}));

  const auto cls = classify_equation(homogeneous);
  const auto* finite = std::get_if<Classification::Finite>(&cls.verdict);
  const bool unique_by_classification = finite && finite->count == 1;
  const bool unique_by_moduli =
      gcd3(a, b, m) == 1 && split_modulus(fact, b).m1 == 1;
  bool b_nilpotent = true;
  try {
    (void)nilpotency_index(Residue(ib, m));
  } catch (const Error&) {
    b_nilpotent = false;
  }
  const bool unique_by_units = Residue(ia, m).is_unit() && b_nilpotent;
  if (unique_by_classification != unique_by_moduli ||
      unique_by_moduli != unique_by_units) {
    rec.fail(a, b, 0, std::nullopt,
             "uniqueness criteria disagree: classification=" +
                 std::to_string(unique_by_classification) +
                 " moduli=" + std::to_string(unique_by_moduli) +
                 " units=" + std::to_string(unique_by_units));
  }
  if (!unique_by_classification) return;
  ++row.solvable;

  const auto zero = general_solution(homogeneous);
  for (std::uint64_t n = 0; n < 8; ++n) {
    if (!zero.at({}, n).is_zero()) {
      rec.fail(a, b, 0, std::nullopt, "homogeneous solution is not identically zero");
      break;
    }
  }
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const ProblemSpec spec(m, ia, ib, random_periodic_forcing(rng, m, 4));
    const auto forced = classify_equation(spec);
    const auto* f = std::get_if<Classification::Finite>(&forced.verdict);
    if (!f || f->count != 1) {
      rec.fail(a, b, trial, std::nullopt,
               "homogeneous equation is uniquely solvable but a forced one is not");
      continue;
    }
    rec.verify(spec, general_solution(spec).prefix({}, 6), std::nullopt, trial);
  }
}

}  // namespace

SequenceSpec random_periodic_forcing(Rng& rng, std::uint64_t m, std::size_t length,
                                     std::uint64_t multiple_of) {
  std::vector<Residue> terms;
  terms.reserve(length);
  const std::uint64_t range = m / multiple_of;
  for (std::size_t i = 0; i < length; ++i) {
    terms.emplace_back(static_cast<std::int64_t>(draw(rng, range) * multiple_of), m);
  }
  return SequenceSpec(m, std::move(terms), length);
}

std::uint64_t SweepReport::total_sequences() const {
  std::uint64_t n = 0;
  for (const auto& r : rows) n += r.sequences_verified;
  return n;
}

std::uint64_t SweepReport::total_counts() const {
  std::uint64_t n = 0;
  for (const auto& r : rows) n += r.counts_compared;
  return n;
}

SweepReport run_oracle_sweep(const OracleSweepOptions& options) {
  SweepReport report;
  for (std::uint64_t m = options.m_min; m <= options.m_max; ++m) {
    ModulusSummary row{m};
    Recorder rec(report, row);
    for (std::uint64_t a = 0; a < m; ++a) {
      for (std::uint64_t b = 0; b < m; ++b) {
        ++row.cells;
        check_oracle_cell(options, m, a, b, rec, row);
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

SweepReport run_uniqueness_sweep(const UniquenessSweepOptions& options) {
  SweepReport report;
  for (std::uint64_t m = options.m_min; m <= options.m_max; ++m) {
    ModulusSummary row{m};
    Recorder rec(report, row);
    const Factorization fact = factorize(m);
    for (std::uint64_t a = 0; a < m; ++a) {
      for (std::uint64_t b = 0; b < m; ++b) {
        ++row.cells;
        check_uniqueness_cell(options, fact, a, b, rec, row);
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

void print_report(std::ostream& os, const std::string& title, const SweepReport& report) {
  os << title << '\n';
  os << std::setw(6) << "m" << std::setw(8) << "cells" << std::setw(10) << "solvable"
     << std::setw(12) << "sequences" << std::setw(10) << "counts" << std::setw(14)
     << "discrepancies" << '\n';
  for (const auto& r : report.rows) {
    os << std::setw(6) << r.m << std::setw(8) << r.cells << std::setw(10) << r.solvable
       << std::setw(12) << r.sequences_verified << std::setw(10) << r.counts_compared
       << std::setw(14) << r.discrepancies << '\n';
  }
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < report.discrepancies.size() && i < kShown; ++i) {
    const auto& d = report.discrepancies[i];
    os << "  DISCREPANCY m=" << d.m << " a=" << d.a << " b=" << d.b
       << " trial=" << d.trial;
    if (d.y0) os << " y0=" << *d.y0;
    os << ": " << d.what << '\n';
  }
  if (report.discrepancies.size() > kShown) {
    os << "  ... " << report.discrepancies.size() - kShown << " more\n";
  }
  os << (report.passed() ? "PASS" : "FAIL") << ": " << report.discrepancies.size()
     << " discrepancies\n";
}

}  // namespace zmdiff::sweep
