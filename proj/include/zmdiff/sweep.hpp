#pragma once

// Exhaustive cross-checks of the solver against the brute-force oracle and
// of the uniqueness criteria against each other, over every (a, b) for a
// range of moduli.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zmdiff/oracle.hpp"
#include "zmdiff/problem.hpp"

namespace zmdiff::sweep {

using Rng = std::mt19937_64;

// Uniform-enough draw in [0, bound); platform independent for a fixed seed.
inline std::uint64_t draw(Rng& rng, std::uint64_t bound) { return rng() % bound; }

// A forcing sequence of `length` random terms repeating with that period, so
// the whole infinite sequence is known. With `multiple_of` every term is a
// random multiple of it.
SequenceSpec random_periodic_forcing(Rng& rng, std::uint64_t m, std::size_t length,
                                     std::uint64_t multiple_of = 1);

struct Discrepancy {
  std::uint64_t m = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::size_t trial = 0;
  std::optional<std::uint64_t> y0;
  std::string what;
};

struct ModulusSummary {
  std::uint64_t m = 0;
  std::uint64_t cells = 0;
  std::uint64_t solvable = 0;
  std::uint64_t sequences_verified = 0;
  std::uint64_t counts_compared = 0;
  std::uint64_t discrepancies = 0;
};

struct SweepReport {
  std::vector<ModulusSummary> rows;
  std::vector<Discrepancy> discrepancies;

  bool passed() const { return discrepancies.empty(); }
  std::uint64_t total_sequences() const;
  std::uint64_t total_counts() const;
};

struct OracleSweepOptions {
  std::uint64_t m_min = 2;
  std::uint64_t m_max = 24;
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::size_t horizon = 5;
  std::uint64_t budget = oracle::kDefaultBudget;
  // Check every initial value y0 in Z_m against the pinned oracle as well.
  bool initial_problems = true;
};

// Per cell (m, a, b) and trial: every solver-produced sequence passes
// verify_solution, the oracle's truncated prefix count matches the
// classification, the initial-problem verdict matches the pinned oracle, and
// for d = 1 the oracle's initial values project onto the compatibility
// residue. Odd trials draw forcing terms divisible by d.
SweepReport run_oracle_sweep(const OracleSweepOptions& options);

struct UniquenessSweepOptions {
  std::uint64_t m_min = 2;
  std::uint64_t m_max = 64;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
};

// "Unique solution" computed three ways must agree for every (a, b); when the
// homogeneous equation has only the zero solution, random forcings must all
// give a unique solution.
SweepReport run_uniqueness_sweep(const UniquenessSweepOptions& options);

void print_report(std::ostream& os, const std::string& title, const SweepReport& report);

}  // namespace zmdiff::sweep
