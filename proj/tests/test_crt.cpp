#include <gtest/gtest.h>

#include <random>

#include "zmdiff/crt.hpp"

namespace zmdiff {
namespace {

SplitModuli split(std::uint64_t m, std::uint64_t b) { return split_modulus(factorize(m), b); }

TEST(SplitModulus, Examples) {
  auto s = split(6, 3);
  EXPECT_EQ(s.m1, 2u);
  EXPECT_EQ(s.m2, 3u);
  s = split(9, 3);
  EXPECT_EQ(s.m1, 1u);
  EXPECT_EQ(s.m2, 9u);
  s = split(6, 1);
  EXPECT_EQ(s.m1, 6u);
  EXPECT_EQ(s.m2, 1u);
  s = split(12, 0);
  EXPECT_EQ(s.m1, 1u);
  EXPECT_EQ(s.m2, 12u);
}

TEST(SplitModulus, PrimeSidesFollowDivisibility) {
  for (std::uint64_t m = 2; m <= 200; ++m) {
    for (std::uint64_t b = 0; b < m; ++b) {
      const auto s = split(m, b);
      ASSERT_EQ(s.m, m);
      ASSERT_EQ(s.m1 * s.m2, m);
      ASSERT_EQ(gcd(s.m1, s.m2), 1u);
      for (std::uint64_t p = 2; p <= m; ++p) {
        bool prime = true;
        for (std::uint64_t q = 2; q * q <= p && prime; ++q) prime = p % q != 0;
        if (!prime || m % p != 0) continue;
        const bool divides_b = b % p == 0;
        ASSERT_EQ(s.m2 % p == 0, divides_b) << "m=" << m << " b=" << b << " p=" << p;
        ASSERT_EQ(s.m1 % p == 0, !divides_b);
      }
      ASSERT_EQ(s.fact_m1.n, s.m1);
      ASSERT_EQ(s.fact_m2.n, s.m2);
    }
  }
}

TEST(Project, Examples) {
  const auto s = split(6, 3);
  EXPECT_EQ(project(Residue(5, 6), CrtSide::kFirst, s), Residue(1, 2));
  EXPECT_EQ(project(Residue(5, 6), CrtSide::kSecond, s), Residue(2, 3));
  EXPECT_EQ(project(Residue(0, 6), CrtSide::kSecond, s), Residue(0, 3));
}

TEST(Psi, Examples) {
  const CrtIso iso(split(6, 3));
  EXPECT_EQ(iso.psi(Residue(1, 2), Residue(1, 3)), Residue(1, 6));
  EXPECT_EQ(iso.psi(Residue(0, 2), Residue(0, 3)), Residue(0, 6));
  EXPECT_EQ(iso.psi(Residue(1, 2), Residue(2, 3)), Residue(5, 6));
  for (std::int64_t t1 = 0; t1 < 2; ++t1) {
    for (std::int64_t t2 = 0; t2 < 3; ++t2) {
      EXPECT_EQ(iso.psi(Residue(t1, 2), Residue(t2, 3)), Residue(3 * t1 + 4 * t2, 6));
    }
  }
}

TEST(Psi, UnitsInvertTheOtherModulus) {
  for (std::uint64_t m = 2; m <= 64; ++m) {
    for (std::uint64_t b = 0; b < m; ++b) {
      const CrtIso iso(split(m, b));
      const auto& s = iso.split();
      if (s.m1 != 1) {
        ASSERT_EQ(iso.e1() * s.m2 % s.m1, 1u);
      }
      if (s.m2 != 1) {
        ASSERT_EQ(iso.e2() * s.m1 % s.m2, 1u);
      }
    }
  }
}

TEST(Psi, RoundTripsBothWays) {
  for (std::uint64_t m = 2; m <= 64; ++m) {
    for (std::uint64_t b = 0; b < m; ++b) {
      const CrtIso iso(split(m, b));
      const auto& s = iso.split();
      for (std::uint64_t x = 0; x < m; ++x) {
        const Residue r(static_cast<std::int64_t>(x), m);
        ASSERT_EQ(iso.psi(iso.project(r, CrtSide::kFirst), iso.project(r, CrtSide::kSecond)), r);
      }
      for (std::uint64_t t1 = 0; t1 < s.m1; ++t1) {
        for (std::uint64_t t2 = 0; t2 < s.m2; ++t2) {
          const Residue r1(static_cast<std::int64_t>(t1), s.m1);
          const Residue r2(static_cast<std::int64_t>(t2), s.m2);
          const Residue x = iso.psi(r1, r2);
          ASSERT_EQ(iso.project(x, CrtSide::kFirst), r1);
          ASSERT_EQ(iso.project(x, CrtSide::kSecond), r2);
        }
      }
    }
  }
}

TEST(Project, IsARingHomomorphism) {
  std::mt19937_64 rng(3);
  for (std::uint64_t m = 2; m <= 64; ++m) {
    for (std::uint64_t b = 0; b < m; ++b) {
      const auto s = split(m, b);
      for (int trial = 0; trial < 8; ++trial) {
        const Residue x(static_cast<std::int64_t>(rng() % m), m);
        const Residue y(static_cast<std::int64_t>(rng() % m), m);
        for (auto side : {CrtSide::kFirst, CrtSide::kSecond}) {
          ASSERT_EQ(project(x + y, side, s), project(x, side, s) + project(y, side, s));
          ASSERT_EQ(project(x * y, side, s), project(x, side, s) * project(y, side, s));
        }
      }
    }
  }
}

}  // namespace
}  // namespace zmdiff
