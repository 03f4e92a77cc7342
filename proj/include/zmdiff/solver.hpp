#pragma once

// Solvability, classification and closed-form solutions of
//
//     B X_{n+1} = A X_n + F_n   over Z_m.
//
// With d = gcd(a, b, m) = 1 the equation splits by the CRT into an explicit
// part over Z_m1 (B1 invertible, X_{1,0} free) and an implicit part over Z_m2
// (B2 nilpotent, A2 invertible, solution unique and built from future forcing
// terms). With d != 1 the equation is divided through by d and every solution
// of the reduced equation over Z_{m/d} lifts to d choices per index.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "zmdiff/crt.hpp"
#include "zmdiff/modring.hpp"
#include "zmdiff/problem.hpp"

namespace zmdiff {

struct SplitProblem {
  CrtIso iso;
  Residue A1, B1;
  SequenceSpec F1;
  Residue A2, B2;
  SequenceSpec F2;
  std::optional<std::uint32_t> indB2;  // present iff m2 != 1
};

SplitProblem split_problem(const ProblemSpec& spec);

// X_{1,n} = B1^-n A1^n x10 + sum_{s<n} A1^s B1^{-s-1} F_{1,n-s-1}.
Residue explicit_solution(const Residue& A1, const Residue& B1, const Residue& x10,
                          const SequenceSpec& F1, std::uint64_t n);

// X_{2,n} = -sum_{s<ind(B2)} A2^{-s-1} B2^s F_{2,n+s}.
// Throws InsufficientLookahead(n) when F_{2,n+ind-1} is unavailable.
Residue nilpotent_solution(const Residue& A2, const Residue& B2,
                           const SequenceSpec& F2, std::uint64_t n);

// The only admissible value of the initial condition's m2-component; the
// nilpotent solution at n = 0. Requires m2 != 1.
Residue compatibility_residue(const SplitProblem& sp);

struct Classification {
  struct None {
    std::uint64_t witness_index;
    bool operator==(const None&) const = default;
  };
  struct Finite {
    std::uint64_t count;
    bool operator==(const Finite&) const = default;
  };
  struct Infinite {
    std::uint64_t d;
    std::uint64_t m1_prime;
    bool operator==(const Infinite&) const = default;
  };

  std::variant<None, Finite, Infinite> verdict;
  // Set when "d divides every f_n" was only checked on a finite aperiodic
  // prefix.
  bool support_qualified = false;

  bool is_none() const { return std::holds_alternative<None>(verdict); }
  bool is_finite() const { return std::holds_alternative<Finite>(verdict); }
  bool is_infinite() const { return std::holds_alternative<Infinite>(verdict); }
};

struct InitialClassification {
  struct Unique {
    bool operator==(const Unique&) const = default;
  };
  struct InfinitelyMany {
    bool operator==(const InfinitelyMany&) const = default;
  };
  struct DivisibilityWitness {
    std::uint64_t index;
    bool operator==(const DivisibilityWitness&) const = default;
  };
  struct CompatibilityMismatch {
    Residue required;
    Residue actual;
    bool operator==(const CompatibilityMismatch&) const = default;
  };
  struct NoSolution {
    std::variant<DivisibilityWitness, CompatibilityMismatch> reason;
    bool operator==(const NoSolution&) const = default;
  };

  std::variant<Unique, InfinitelyMany, NoSolution> verdict;
  bool support_qualified = false;

  bool is_solvable() const { return !std::holds_alternative<NoSolution>(verdict); }
};

Classification classify_equation(const ProblemSpec& spec);
InitialClassification classify_initial_problem(const ProblemSpec& spec,
                                               const Residue& y0);

// The structural quantities of a problem, for reporting.
struct Structure {
  std::uint64_t m = 0;
  std::uint64_t d = 0;
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  std::optional<std::uint32_t> indB2;
  std::uint64_t mprime = 0;
  std::uint64_t m1prime = 0;
  std::uint64_t m2prime = 0;
  std::optional<std::uint32_t> indB2prime;
  std::uint64_t lookahead = 0;
  std::uint64_t forced_tail = 0;
  // Required value of [y0]_{m2} (d = 1) or [y0]_{m'2} (d != 1, forcing
  // divisible by d); absent when that side is trivial or the data runs out.
  std::optional<Residue> compatibility;
};

Structure analyze(const ProblemSpec& spec);

enum class SolutionKind { kExplicit, kNilpotent, kMixed, kLifted };

const char* to_string(SolutionKind kind) noexcept;

struct SolutionParameters {
  // X_0 (explicit), X_{1,0} (mixed) or X'_{1,0} (lifted); ignored for
  // nilpotent kinds and initial problems.
  std::uint64_t free_initial = 0;
  // alpha_n per index; missing trailing digits are 0.
  std::vector<std::uint64_t> alpha;
};

// A parameterized family of solutions. Free parameters: an initial residue
// below free_initial_modulus() and one lift digit below lift_digit_bound()
// per index. Evaluating X_n needs forcing terms through n + lookahead().
class GeneralSolution {
 public:
  SolutionKind kind() const noexcept { return kind_; }
  // Kind of the coprime (d = 1) solution underneath a lifted one.
  SolutionKind core_kind() const noexcept { return core_.kind; }
  std::uint64_t modulus() const noexcept { return m_; }
  std::uint64_t free_initial_modulus() const noexcept { return free_modulus_; }
  std::uint64_t lift_digit_bound() const noexcept { return d_; }
  std::uint64_t lookahead() const noexcept;
  // Number of trailing positions of a finite solution prefix that are not yet
  // pinned down by the nilpotent part: ind(B2) when that part is present,
  // otherwise 0.
  std::uint64_t forced_tail() const noexcept;
  std::optional<std::uint64_t> pinned_first_digit() const noexcept { return alpha0_; }
  bool is_initial_problem() const noexcept { return core_.initial.has_value(); }

  // Number of leading indices that can be evaluated; nullopt for periodic
  // forcing.
  std::optional<std::uint64_t> evaluable_length() const;

  Residue at(const SolutionParameters& params, std::uint64_t n) const;
  std::vector<Residue> prefix(const SolutionParameters& params,
                              std::uint64_t length) const;

 private:
  friend GeneralSolution general_solution(const ProblemSpec&);
  friend GeneralSolution solve_initial_problem(const ProblemSpec&, const Residue&);

  // The d = 1 machinery over Z_{core modulus}.
  struct Core {
    SolutionKind kind;
    ProblemSpec spec;
    SplitProblem split;
    std::optional<Residue> initial;

    Residue at(std::uint64_t free_initial, std::uint64_t n) const;
  };

  GeneralSolution(SolutionKind kind, Core core, std::uint64_t m, std::uint64_t d,
                  std::uint64_t free_modulus, std::optional<std::uint64_t> alpha0);

  static Core make_core(const ProblemSpec& spec, std::optional<Residue> initial);

  void validate(const SolutionParameters& params) const;
  Residue lift(const Residue& core_value, const SolutionParameters& params,
               std::uint64_t n) const;

  SolutionKind kind_;
  Core core_;
  std::uint64_t m_;
  std::uint64_t d_;
  std::uint64_t free_modulus_;
  std::optional<std::uint64_t> alpha0_;
};

// Throws Unsolvable when classify_equation reports no solutions.
GeneralSolution general_solution(const ProblemSpec& spec);

// Throws Unsolvable when classify_initial_problem reports no solutions.
GeneralSolution solve_initial_problem(const ProblemSpec& spec, const Residue& y0);

}  // namespace zmdiff
