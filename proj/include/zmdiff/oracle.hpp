#pragma once

// Brute-force ground truth for B X_{n+1} = A X_n + F_n over Z_m.
//
// Everything here works directly on the congruence b x_{n+1} = a x_n + f_n
// (mod m) one step at a time. Nothing in this file knows about the CRT split,
// the gcd reduction or the closed-form solutions.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "zmdiff/modring.hpp"
#include "zmdiff/problem.hpp"

namespace zmdiff::oracle {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// All x in Z_m with b x = a xn + fn (mod m), ascending.
std::vector<Residue> step_solutions(const Residue& xn, const Residue& fn,
                                    std::uint64_t a, std::uint64_t b, std::uint64_t m);

// Length-N prefixes satisfying every constraint among their own terms, stored
// row-major in ascending lexicographic order.
class PrefixSet {
 public:
  PrefixSet(std::uint64_t modulus, std::size_t horizon)
      : modulus_(modulus), horizon_(horizon) {}

  std::uint64_t modulus() const noexcept { return modulus_; }
  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t size() const noexcept {
    return horizon_ == 0 ? 0 : values_.size() / horizon_;
  }
  bool empty() const noexcept { return values_.empty(); }
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {values_.data() + i * horizon_, horizon_};
  }
  bool contains(std::span<const std::uint64_t> seq) const;

  void append(std::span<const Residue> seq);

 private:
  std::uint64_t modulus_;
  std::size_t horizon_;
  std::vector<std::uint64_t> values_;
};

// Called once per complete prefix, in ascending lexicographic order. Return
// false to stop the enumeration.
using PrefixVisitor = std::function<bool(std::span<const Residue>)>;

// Depth-first enumeration with an explicit stack. Uses f_0 .. f_{N-2}.
// Throws BudgetExceeded once more than `budget` partial prefixes have been
// explored, InsufficientData when a forcing term is missing.
void for_each_prefix(const ProblemSpec& spec, std::size_t horizon,
                     std::optional<Residue> y0, std::uint64_t budget,
                     const PrefixVisitor& visit);

PrefixSet brute_force_prefixes(const ProblemSpec& spec, std::size_t horizon,
                               std::optional<Residue> y0 = std::nullopt,
                               std::uint64_t budget = kDefaultBudget);

// Number of distinct restrictions of the members to indices 0 .. N-1-K.
std::uint64_t truncated_prefix_count(const PrefixSet& prefixes, std::size_t drop);

// Same count without materializing the prefixes.
std::uint64_t count_truncated_prefixes(const ProblemSpec& spec, std::size_t horizon,
                                       std::size_t drop,
                                       std::optional<Residue> y0 = std::nullopt,
                                       std::uint64_t budget = kDefaultBudget);

bool prefix_exists(const ProblemSpec& spec, std::size_t horizon,
                   std::optional<Residue> y0 = std::nullopt,
                   std::uint64_t budget = kDefaultBudget);

struct Verdict {
  bool ok = true;
  // Index n of the first violated transition n -> n+1, or 0 together with
  // initial_mismatch when seq[0] differs from the pinned y0.
  std::optional<std::size_t> first_failure;
  bool initial_mismatch = false;
};

Verdict verify_solution(const ProblemSpec& spec, std::span<const Residue> seq,
                        std::optional<Residue> y0 = std::nullopt);

}  // namespace zmdiff::oracle
