#pragma once

// Problem data for B*X_{n+1} = A*X_n + F_n over Z_m, its gcd-reduced form
// over Z_{m/d}, and the lift of reduced solutions back to Z_m.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zmdiff/modring.hpp"

namespace zmdiff {

// A forcing sequence given by a finite prefix f_0 .. f_{N-1}. With a period p
// the sequence continues as f_{n+p} = f_n for n >= N - p; without one, terms
// past the prefix are unknown.
class SequenceSpec {
 public:
  SequenceSpec(std::uint64_t modulus, std::vector<Residue> prefix,
               std::optional<std::uint64_t> period = std::nullopt);

  static SequenceSpec from_integers(std::uint64_t modulus,
                                    std::span<const std::int64_t> values,
                                    std::optional<std::uint64_t> period = std::nullopt);

  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::vector<Residue>& prefix() const noexcept { return prefix_; }
  std::optional<std::uint64_t> period() const noexcept { return period_; }
  bool is_periodic() const noexcept { return period_.has_value(); }

  bool has_term(std::uint64_t n) const noexcept;
  // Throws InsufficientData(n) past an aperiodic prefix.
  Residue term(std::uint64_t n) const;

  // First index n with d not dividing f_n. The prefix covers one full period
  // when periodic, so the answer is exact in that case; otherwise it speaks
  // only for the given prefix.
  std::optional<std::uint64_t> first_nondivisible(std::uint64_t d) const;

  SequenceSpec transform(std::uint64_t target_modulus,
                         const std::function<Residue(const Residue&)>& fn) const;

 private:
  std::uint64_t modulus_;
  std::vector<Residue> prefix_;
  std::optional<std::uint64_t> period_;
};

class ReducedSpec;

class ProblemSpec {
 public:
  // a and b are stored as their least non-negative representatives mod m.
  ProblemSpec(std::uint64_t m, std::int64_t a, std::int64_t b, SequenceSpec forcing);

  std::uint64_t m() const noexcept { return m_; }
  std::uint64_t a() const noexcept { return A_.value(); }
  std::uint64_t b() const noexcept { return B_.value(); }
  const Residue& A() const noexcept { return A_; }
  const Residue& B() const noexcept { return B_; }
  const SequenceSpec& forcing() const noexcept { return forcing_; }

  // gcd(a, b, m) on the canonical representatives.
  std::uint64_t d() const;

 private:
  friend class ReducedSpec;
  friend ReducedSpec reduce_by_gcd(const ProblemSpec&, std::optional<Residue>);
  struct AllowNullRing {};
  ProblemSpec(AllowNullRing, std::uint64_t m, std::int64_t a, std::int64_t b,
              SequenceSpec forcing);

  std::uint64_t m_;
  Residue A_;
  Residue B_;
  SequenceSpec forcing_;
};

// The primed equation B' X'_{n+1} = A' X'_n + F'_n over Z_{m'}, m' = m/d.
// m' = 1 is possible (d = m); the primed problem then lives in the null ring.
class ReducedSpec {
 public:
  std::uint64_t d() const noexcept { return d_; }
  std::uint64_t mprime() const noexcept { return primed_.m(); }
  const Residue& Aprime() const noexcept { return primed_.A(); }
  const Residue& Bprime() const noexcept { return primed_.B(); }
  const SequenceSpec& Fprime() const noexcept { return primed_.forcing(); }
  const std::optional<Residue>& yprime0() const noexcept { return yprime0_; }
  const ProblemSpec& primed() const noexcept { return primed_; }

 private:
  friend ReducedSpec reduce_by_gcd(const ProblemSpec&, std::optional<Residue>);
  ReducedSpec(std::uint64_t d, ProblemSpec primed, std::optional<Residue> yprime0)
      : d_(d), primed_(std::move(primed)), yprime0_(std::move(yprime0)) {}

  std::uint64_t d_;
  ProblemSpec primed_;
  std::optional<Residue> yprime0_;
};

// Throws NonDivisibleForcing(n) at the first f_n that d does not divide.
ReducedSpec reduce_by_gcd(const ProblemSpec& spec,
                          std::optional<Residue> y0 = std::nullopt);

// X_n = [x'_n + alpha_n * m']_m with m' = m / d.
std::vector<Residue> lift_solution(std::span<const Residue> xprime,
                                   std::span<const std::uint64_t> alpha,
                                   std::uint64_t d, std::uint64_t m);

// Inverse of lift_solution: canonical x'_n and digits alpha_n.
std::pair<std::vector<Residue>, std::vector<std::uint64_t>> unlift_solution(
    std::span<const Residue> x, std::uint64_t d);

}  // namespace zmdiff
