#include "zmdiff/crt.hpp"

#include <string>
#include <utility>

namespace zmdiff {

SplitModuli split_modulus(const Factorization& fact_m, std::uint64_t b) {
  SplitModuli split;
  split.m = fact_m.n;
  for (const auto& pp : fact_m.factors) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < pp.exponent; ++i) q *= pp.prime;
    // b = 0 is divisible by every prime, so it lands entirely in m2.
    auto& side = (b % pp.prime == 0) ? split.fact_m2 : split.fact_m1;
    auto& modulus = (b % pp.prime == 0) ? split.m2 : split.m1;
    side.factors.push_back(pp);
    side.n *= q;
    modulus *= q;
  }
  return split;
}

Residue project(const Residue& x, CrtSide target, const SplitModuli& split) {
  if (x.modulus() != split.m) {
    throw Error(ErrorCode::kModulusMismatch,
                "projection expects an element of Z_" + std::to_string(split.m));
  }
  return x.reduce_to(target == CrtSide::kFirst ? split.m1 : split.m2);
}

CrtIso::CrtIso(SplitModuli split) : split_(std::move(split)) {
  if (split_.m1 != 1) {
    e1_ = Residue(static_cast<std::int64_t>(split_.m2), split_.m1).inverse().value();
  }
  if (split_.m2 != 1) {
    e2_ = Residue(static_cast<std::int64_t>(split_.m1), split_.m2).inverse().value();
  }
}

Residue CrtIso::psi(const Residue& t1, const Residue& t2) const {
  if (t1.modulus() != split_.m1 || t2.modulus() != split_.m2) {
    throw Error(ErrorCode::kModulusMismatch,
                "psi expects Z_" + std::to_string(split_.m1) + " (+) Z_" +
                    std::to_string(split_.m2));
  }
  const std::uint64_t m = split_.m;
  if (split_.m1 == 1) return Residue(static_cast<std::int64_t>(t2.value()), m);
  if (split_.m2 == 1) return Residue(static_cast<std::int64_t>(t1.value()), m);
  // t1*e1 reduced mod m1 keeps every intermediate below m.
  const std::uint64_t u1 = (t1.value() * e1_) % split_.m1 * split_.m2;
  const std::uint64_t u2 = (t2.value() * e2_) % split_.m2 * split_.m1;
  return Residue(static_cast<std::int64_t>((u1 + u2) % m), m);
}

}  // namespace zmdiff
