#pragma once

// Exact arithmetic in the residue class ring Z_s.
//
// Moduli are limited to 1 <= s <= 2^32 so that the product of two canonical
// representatives always fits in 64 bits. Z_1 is the null ring: its only
// element is 0, which is also its multiplicative identity.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "zmdiff/error.hpp"

namespace zmdiff {

inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 32;

class Residue {
 public:
  // [t]_s with the least non-negative representative.
  Residue(std::int64_t t, std::uint64_t modulus);

  static Residue zero(std::uint64_t modulus) { return Residue(0, modulus); }
  static Residue one(std::uint64_t modulus) { return Residue(1, modulus); }

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  Residue operator+(const Residue& other) const;
  Residue operator-(const Residue& other) const;
  Residue operator*(const Residue& other) const;
  Residue operator-() const;
  Residue& operator+=(const Residue& other) { return *this = *this + other; }
  Residue& operator-=(const Residue& other) { return *this = *this - other; }
  Residue& operator*=(const Residue& other) { return *this = *this * other; }

  Residue pow(std::uint64_t exponent) const;

  // Throws NotInvertible when gcd(value, modulus) != 1. In Z_1 returns 0.
  Residue inverse() const;

  bool is_unit() const noexcept;
  bool is_nilpotent() const noexcept;

  // Reinterprets the representative in Z_target (the natural projection when
  // target divides the modulus).
  Residue reduce_to(std::uint64_t target) const;

  bool operator==(const Residue&) const = default;

 private:
  struct Raw {};
  Residue(Raw, std::uint64_t value, std::uint64_t modulus) noexcept
      : value_(value), modulus_(modulus) {}

  void require_same_modulus(const Residue& other) const;

  std::uint64_t value_;
  std::uint64_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

Residue make_residue(std::int64_t t, std::uint64_t modulus);

Residue add(const Residue& x, const Residue& y);
Residue sub(const Residue& x, const Residue& y);
Residue mul(const Residue& x, const Residue& y);
Residue pow(const Residue& x, std::uint64_t exponent);
Residue inverse(const Residue& x);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

// Positive gcd(a, b, m); equals m when a = b = 0.
std::uint64_t gcd3(std::uint64_t a, std::uint64_t b, std::uint64_t m);

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  bool operator==(const Factorization&) const = default;
};

// Trial division up to sqrt(n).
Factorization factorize(std::uint64_t n);

// Least k >= 1 with x^k = 0. Throws NotNilpotent otherwise.
std::uint32_t nilpotency_index(const Residue& x);

}  // namespace zmdiff
