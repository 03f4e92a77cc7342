// Acceptance gate: one PASS/FAIL line per criterion. Every comparison is
// exact; the runtime ceilings below are part of each criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zmdiff/crt.hpp"
#include "zmdiff/error.hpp"
#include "zmdiff/solver.hpp"
#include "zmdiff/sweep.hpp"

namespace {

using namespace zmdiff;
using Seq = std::vector<std::int64_t>;
using Row = std::vector<std::uint64_t>;

constexpr double kExampleSeconds = 1.0;
constexpr double kOracleSweepSeconds = 120.0;
constexpr double kUniquenessSweepSeconds = 30.0;
constexpr double kStructuralSeconds = 10.0;
constexpr std::uint64_t kStructuralMinCases = 10'000;

std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

ProblemSpec make(std::uint64_t m, std::int64_t a, std::int64_t b, const Seq& f) {
  return ProblemSpec(m, a, b, SequenceSpec::from_integers(m, f));
}

Seq random_forcing(std::mt19937_64& rng, std::uint64_t m, std::size_t len,
                   std::uint64_t multiple_of = 1) {
  Seq f;
  for (std::size_t i = 0; i < len; ++i) {
    f.push_back(static_cast<std::int64_t>(multiple_of * (rng() % m) % m));
  }
  return f;
}

Row values(const std::vector<Residue>& xs) {
  Row out;
  for (const auto& x : xs) out.push_back(x.value());
  return out;
}

// Collects a failure description; the first few are printed.
struct Failures {
  std::vector<std::string> items;
  void add(const std::string& s) { items.push_back(s); }
  bool empty() const { return items.empty(); }
};

template <typename... Parts>
std::string str(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

// Every member of the initial-problem family over the given digit alphabet.
std::set<Row> solver_family(const GeneralSolution& gs, std::size_t length) {
  std::set<Row> out;
  const std::uint64_t d = gs.lift_digit_bound();
  std::vector<std::uint64_t> alpha(length, 0);
  while (true) {
    out.insert(values(gs.prefix({0, alpha}, length)));
    std::size_t pos = length;
    while (pos > 1 && alpha[pos - 1] == d - 1) alpha[--pos] = 0;
    if (pos <= 1) break;
    ++alpha[pos - 1];
  }
  return out;
}

void criterion1(Failures& fail) {
  std::mt19937_64 rng(101);
  const auto cls = classify_equation(make(6, 2, 3, {0}));
  if (!(cls.is_finite() && std::get<Classification::Finite>(cls.verdict).count == 2)) {
    fail.add("Example 1 is not finite with 2 solutions");
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Seq f = random_forcing(rng, 6, 8);
    const auto spec = make(6, 2, 3, f);
    for (std::int64_t y0 = 0; y0 < 6; ++y0) {
      const bool expected = mod(y0, 3) == mod(f[0], 3);
      const bool solvable = classify_initial_problem(spec, Residue(y0, 6)).is_solvable();
      if (solvable != expected) fail.add(str("trial ", trial, " y0=", y0, ": solvability"));
      if (!solvable) continue;
      const auto x = solve_initial_problem(spec, Residue(y0, 6)).prefix({}, 8);
      if (x[0].value() != static_cast<std::uint64_t>(y0)) fail.add("X_0 != y0");
      for (std::size_t n = 1; n <= 7; ++n) {
        if (x[n].value() != static_cast<std::uint64_t>(mod(3 * f[n - 1] + 4 * f[n], 6))) {
          fail.add(str("trial ", trial, " y0=", y0, " n=", n, ": closed form mismatch"));
        }
      }
    }
  }
}

void criterion2(Failures& fail) {
  std::mt19937_64 rng(102);
  const auto cls = classify_equation(make(9, 2, 3, {0}));
  if (!(cls.is_finite() && std::get<Classification::Finite>(cls.verdict).count == 1)) {
    fail.add("Example 2 is not finite with 1 solution");
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Seq f = random_forcing(rng, 9, 8);
    const auto spec = make(9, 2, 3, f);
    const auto x = general_solution(spec).prefix({}, 7);
    for (std::size_t n = 0; n <= 6; ++n) {
      if (x[n].value() != static_cast<std::uint64_t>(mod(4 * f[n] + 6 * f[n + 1], 9))) {
        fail.add(str("trial ", trial, " n=", n, ": closed form mismatch"));
      }
    }
    for (std::int64_t y0 = 0; y0 < 9; ++y0) {
      const bool expected = y0 == mod(4 * f[0] + 6 * f[1], 9);
      if (classify_initial_problem(spec, Residue(y0, 9)).is_solvable() != expected) {
        fail.add(str("trial ", trial, " y0=", y0, ": solvability"));
      }
    }
  }
}

void criterion3(Failures& fail) {
  constexpr std::size_t kHorizon = 6;
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    // One odd term somewhere among the first kHorizon.
    Seq odd = random_forcing(rng, 12, kHorizon, 2);
    const std::size_t at = rng() % kHorizon;
    odd[at] = mod(odd[at] + 1, 12);
    const auto bad = make(12, 2, 6, odd);
    if (!classify_equation(bad).is_none()) fail.add(str("trial ", trial, ": odd f solvable"));
    for (std::int64_t y0 = 0; y0 < 12; ++y0) {
      if (classify_initial_problem(bad, Residue(y0, 12)).is_solvable()) {
        fail.add(str("trial ", trial, " y0=", y0, ": odd f initial problem solvable"));
      }
    }

    const Seq f = random_forcing(rng, 12, kHorizon, 2);
    const auto spec = make(12, 2, 6, f);
    for (std::int64_t y0 = 0; y0 < 12; ++y0) {
      if (mod(y0, 3) != mod(f[0], 3)) continue;
      const auto ic = classify_initial_problem(spec, Residue(y0, 12));
      if (!std::holds_alternative<InitialClassification::InfinitelyMany>(ic.verdict)) {
        fail.add(str("trial ", trial, " y0=", y0, ": not infinitely many"));
        continue;
      }
      const auto got = solver_family(solve_initial_problem(spec, Residue(y0, 12)), kHorizon);
      // The formula family over every alpha in {0,1}^kHorizon, restricted to
      // X_0 = y0; exactly one alpha_0 must realize it.
      std::set<Row> want;
      std::set<std::uint64_t> alpha0_hits;
      for (std::uint64_t bits = 0; bits < (1u << kHorizon); ++bits) {
        Row row;
        std::int64_t half_sum = 0;
        for (std::size_t n = 0; n < kHorizon; ++n) {
          const std::int64_t alpha = (bits >> (kHorizon - 1 - n)) & 1;
          row.push_back(static_cast<std::uint64_t>(
              mod(3 * y0 + 3 * half_sum + 4 * f[n] + 6 * alpha, 12)));
          half_sum += f[n] / 2;
        }
        if (row[0] != static_cast<std::uint64_t>(y0)) continue;
        alpha0_hits.insert(bits >> (kHorizon - 1));
        want.insert(row);
      }
      if (alpha0_hits.size() != 1) fail.add(str("trial ", trial, " y0=", y0, ": alpha_0 not unique"));
      if (got != want) {
        fail.add(str("trial ", trial, " y0=", y0, ": family has ", got.size(),
                     " members, formula ", want.size()));
      }
    }
  }
}

void criterion4(Failures& fail) {
  constexpr std::size_t kHorizon = 6;
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 20; ++trial) {
    const Seq f = random_forcing(rng, 12, kHorizon, 3);
    const auto spec = make(12, 6, 9, f);
    for (std::int64_t y0 = 0; y0 < 12; ++y0) {
      const auto got = solver_family(solve_initial_problem(spec, Residue(y0, 12)), kHorizon);
      std::set<Row> want;
      std::vector<std::int64_t> alpha(kHorizon, 0);
      while (true) {
        Row row{static_cast<std::uint64_t>(y0),
                static_cast<std::uint64_t>(mod(2 * y0 + f[0] + 4 * alpha[1], 12))};
        for (std::size_t n = 2; n < kHorizon; ++n) {
          row.push_back(
              static_cast<std::uint64_t>(mod(f[n - 1] + 2 * f[n - 2] / 3 + 4 * alpha[n], 12)));
        }
        want.insert(row);
        std::size_t pos = kHorizon;
        while (pos > 1 && alpha[pos - 1] == 2) alpha[--pos] = 0;
        if (pos <= 1) break;
        ++alpha[pos - 1];
      }
      if (got != want) {
        fail.add(str("trial ", trial, " y0=", y0, ": family has ", got.size(),
                     " members, formula ", want.size()));
      }
    }
  }
}

void add_sweep_failures(const sweep::SweepReport& report, Failures& fail) {
  for (const auto& d : report.discrepancies) {
    fail.add(str("m=", d.m, " a=", d.a, " b=", d.b, " trial=", d.trial, ": ", d.what));
  }
}

void criterion5(Failures& fail) {
  sweep::OracleSweepOptions opt;
  opt.m_min = 2;
  opt.m_max = 24;
  opt.trials = 5;
  opt.horizon = 5;
  opt.seed = 5;
  const auto report = sweep::run_oracle_sweep(opt);
  add_sweep_failures(report, fail);
  if (report.rows.size() != 23) fail.add("not every modulus was swept");
  if (report.total_counts() == 0 || report.total_sequences() == 0) fail.add("nothing compared");
}

void criterion6(Failures& fail) {
  sweep::UniquenessSweepOptions opt;
  opt.m_min = 2;
  opt.m_max = 64;
  opt.trials = 10;
  opt.seed = 6;
  const auto report = sweep::run_uniqueness_sweep(opt);
  add_sweep_failures(report, fail);
  if (report.rows.size() != 63) fail.add("not every modulus was swept");
}

void criterion7(Failures& fail, std::uint64_t& cases) {
  std::mt19937_64 rng(107);
  auto pick = [&](std::uint64_t m) { return Residue(static_cast<std::int64_t>(rng() % m), m); };
  for (std::uint64_t m = 2; m <= 64; ++m) {
    const auto fact = factorize(m);
    for (int trial = 0; trial < 200; ++trial) {
      ++cases;
      const std::uint64_t b = rng() % m;
      const CrtIso iso(split_modulus(fact, b));
      const auto& s = iso.split();
      const Residue x = pick(m), y = pick(m), z = pick(m);
      // psi/pi round trips.
      if (iso.psi(iso.project(x, CrtSide::kFirst), iso.project(x, CrtSide::kSecond)) != x) {
        fail.add(str("m=", m, " b=", b, ": psi(pi(x)) != x"));
      }
      const Residue t1 = pick(s.m1), t2 = pick(s.m2);
      const Residue joined = iso.psi(t1, t2);
      if (iso.project(joined, CrtSide::kFirst) != t1 ||
          iso.project(joined, CrtSide::kSecond) != t2) {
        fail.add(str("m=", m, " b=", b, ": pi(psi(t)) != t"));
      }
      // Projection is a ring homomorphism.
      for (auto side : {CrtSide::kFirst, CrtSide::kSecond}) {
        if (iso.project(x + y, side) != iso.project(x, side) + iso.project(y, side) ||
            iso.project(x * y, side) != iso.project(x, side) * iso.project(y, side)) {
          fail.add(str("m=", m, " b=", b, ": projection not a homomorphism"));
        }
      }
      // Ring axioms.
      if (x + y != y + x || x * y != y * x || (x + y) + z != x + (y + z) ||
          (x * y) * z != x * (y * z) || x * (y + z) != x * y + x * z ||
          x + (-x) != Residue::zero(m) || x * Residue::one(m) != x) {
        fail.add(str("m=", m, ": ring axiom violated"));
      }
      // Nilpotency index is the least k with x^k = 0, by repeated
      // multiplication.
      if (x.is_nilpotent()) {
        const auto ind = nilpotency_index(x);
        Residue power = x;
        std::uint32_t k = 1;
        while (!power.is_zero() && k <= 64) {
          power *= x;
          ++k;
        }
        if (k != ind) fail.add(str("m=", m, " x=", x.value(), ": index ", ind, " vs ", k));
      }
    }
  }
  if (cases < kStructuralMinCases) fail.add(str("only ", cases, " cases"));
}

struct Outcome {
  bool passed;
  double seconds;
};

Outcome check(int id, const std::string& name, double ceiling,
              const std::function<void(Failures&)>& body, const std::string& extra = {}) {
  Failures fail;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(fail);
  } catch (const std::exception& e) {
    fail.add(str("exception: ", e.what()));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= ceiling) fail.add(str("took ", seconds, " s, limit ", ceiling, " s"));
  const bool passed = fail.empty();
  std::printf("%s  [%d] %-44s %8.3f s (limit %.0f s)%s\n", passed ? "PASS" : "FAIL", id,
              name.c_str(), seconds, ceiling, extra.c_str());
  for (std::size_t i = 0; i < fail.items.size() && i < 10; ++i) {
    std::printf("        %s\n", fail.items[i].c_str());
  }
  if (fail.items.size() > 10) std::printf("        ... %zu more\n", fail.items.size() - 10);
  return {passed, seconds};
}

}  // namespace

int main() {
  bool all = true;
  all &= check(1, "Example 1 reproduction (m=6, a=2, b=3)", kExampleSeconds, criterion1).passed;
  all &= check(2, "Example 2 reproduction (m=9, a=2, b=3)", kExampleSeconds, criterion2).passed;
  all &= check(3, "Example 3 reproduction (m=12, a=2, b=6)", kExampleSeconds, criterion3).passed;
  all &= check(4, "Example 4 reproduction (m=12, a=6, b=9)", kExampleSeconds, criterion4).passed;
  all &= check(5, "Oracle sweep, m in [2,24], N=5, 5 trials", kOracleSweepSeconds, criterion5)
             .passed;
  all &= check(6, "Uniqueness criteria, m in [2,64]", kUniquenessSweepSeconds, criterion6).passed;
  std::uint64_t cases = 0;
  all &= check(7, "Structural properties, m <= 64", kStructuralSeconds,
               [&](Failures& f) { criterion7(f, cases); })
             .passed;
  std::printf("structural cases: %llu\n", static_cast<unsigned long long>(cases));
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
