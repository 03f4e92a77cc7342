#pragma once

// The b-driven splitting m = m1 * m2 and the isomorphism
// psi: Z_m1 (+) Z_m2 -> Z_m.
//
// m1 collects the prime powers of m whose prime does not divide b, m2 the
// ones whose prime does. Either side may be 1; the corresponding factor ring
// is then the null ring and psi degenerates to the identity on the other side.

#include <cstdint>

#include "zmdiff/modring.hpp"

namespace zmdiff {

struct SplitModuli {
  std::uint64_t m = 1;
  std::uint64_t m1 = 1;
  std::uint64_t m2 = 1;
  Factorization fact_m1;
  Factorization fact_m2;
};

SplitModuli split_modulus(const Factorization& fact_m, std::uint64_t b);

enum class CrtSide { kFirst = 1, kSecond = 2 };

// pi_i: Z_m -> Z_{m_i}.
Residue project(const Residue& x, CrtSide target, const SplitModuli& split);

class CrtIso {
 public:
  explicit CrtIso(SplitModuli split);

  const SplitModuli& split() const noexcept { return split_; }
  // Least non-negative representatives of E1 = [m2]^-1 mod m1 and
  // E2 = [m1]^-1 mod m2; 0 for the unit of a null-ring side.
  std::uint64_t e1() const noexcept { return e1_; }
  std::uint64_t e2() const noexcept { return e2_; }

  Residue psi(const Residue& t1, const Residue& t2) const;
  Residue project(const Residue& x, CrtSide target) const {
    return zmdiff::project(x, target, split_);
  }

 private:
  SplitModuli split_;
  std::uint64_t e1_ = 0;
  std::uint64_t e2_ = 0;
};

}  // namespace zmdiff
