#include "zmdiff/modring.hpp"

#include <bit>
#include <ostream>
#include <string>

namespace zmdiff {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidModulus: return "InvalidModulus";
    case ErrorCode::kModulusMismatch: return "ModulusMismatch";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kNotNilpotent: return "NotNilpotent";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kInsufficientLookahead: return "InsufficientLookahead";
    case ErrorCode::kNonDivisibleForcing: return "NonDivisibleForcing";
    case ErrorCode::kInvalidLiftDigit: return "InvalidLiftDigit";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnsolvable: return "Unsolvable";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

namespace {

void check_modulus(std::uint64_t modulus) {
  if (modulus == 0 || modulus > kMaxModulus) {
    throw Error(ErrorCode::kInvalidModulus,
                "modulus must lie in [1, 2^32], got " + std::to_string(modulus));
  }
}

}  // namespace

Residue::Residue(std::int64_t t, std::uint64_t modulus) : modulus_(modulus) {
  check_modulus(modulus);
  const auto s = static_cast<std::int64_t>(modulus);
  std::int64_t r = t % s;
  if (r < 0) r += s;
  value_ = static_cast<std::uint64_t>(r);
}

void Residue::require_same_modulus(const Residue& other) const {
  if (modulus_ != other.modulus_) {
    throw Error(ErrorCode::kModulusMismatch,
                "operands live in Z_" + std::to_string(modulus_) + " and Z_" +
                    std::to_string(other.modulus_));
  }
}

Residue Residue::operator+(const Residue& other) const {
  require_same_modulus(other);
  return Residue(Raw{}, (value_ + other.value_) % modulus_, modulus_);
}

Residue Residue::operator-(const Residue& other) const {
  require_same_modulus(other);
  return Residue(Raw{}, (value_ + modulus_ - other.value_) % modulus_, modulus_);
}

Residue Residue::operator*(const Residue& other) const {
  require_same_modulus(other);
  return Residue(Raw{}, (value_ * other.value_) % modulus_, modulus_);
}

Residue Residue::operator-() const {
  return Residue(Raw{}, (modulus_ - value_) % modulus_, modulus_);
}

Residue Residue::pow(std::uint64_t exponent) const {
  Residue result(Raw{}, 1 % modulus_, modulus_);
  Residue base = *this;
  while (exponent != 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

Residue Residue::inverse() const {
  if (modulus_ == 1) return *this;
  // Extended Euclid on (value, modulus), tracking the coefficient of value.
  std::int64_t old_r = static_cast<std::int64_t>(value_);
  std::int64_t r = static_cast<std::int64_t>(modulus_);
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(ErrorCode::kNotInvertible,
                "[" + std::to_string(value_) + "]_" + std::to_string(modulus_) +
                    " is not invertible");
  }
  return Residue(old_s, modulus_);
}

bool Residue::is_unit() const noexcept { return gcd(value_, modulus_) == 1; }

bool Residue::is_nilpotent() const noexcept {
  // x is nilpotent iff every prime of the modulus divides x; equivalently
  // x^e = 0 for e >= the largest prime exponent, and that exponent is at
  // most log2(modulus).
  const auto bound = static_cast<std::uint64_t>(std::bit_width(modulus_));
  return pow(bound).is_zero();
}

Residue Residue::reduce_to(std::uint64_t target) const {
  check_modulus(target);
  return Residue(Raw{}, value_ % target, target);
}

std::ostream& operator<<(std::ostream& os, const Residue& r) {
  return os << '[' << r.value() << "]_" << r.modulus();
}

Residue make_residue(std::int64_t t, std::uint64_t modulus) {
  return Residue(t, modulus);
}

Residue add(const Residue& x, const Residue& y) { return x + y; }
Residue sub(const Residue& x, const Residue& y) { return x - y; }
Residue mul(const Residue& x, const Residue& y) { return x * y; }
Residue pow(const Residue& x, std::uint64_t exponent) { return x.pow(exponent); }
Residue inverse(const Residue& x) { return x.inverse(); }

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t gcd3(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m < 2) {
    throw Error(ErrorCode::kInvalidModulus, "gcd3 requires m >= 2");
  }
  return gcd(gcd(a, b), m);
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot factorize 0");
  }
  Factorization result;
  result.n = n;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    std::uint32_t k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    result.factors.push_back({p, k});
  }
  if (rest > 1) result.factors.push_back({rest, 1});
  return result;
}

std::uint32_t nilpotency_index(const Residue& x) {
  const auto s = x.modulus();
  // ceil(log2 s) + 1 multiplications always suffice.
  const std::uint32_t bound = static_cast<std::uint32_t>(std::bit_width(s - 1)) + 1;
  Residue power = x;
  for (std::uint32_t k = 1; k <= bound; ++k) {
    if (power.is_zero()) return k;
    power = power * x;
  }
  throw Error(ErrorCode::kNotNilpotent,
              "[" + std::to_string(x.value()) + "]_" + std::to_string(s) +
                  " is not nilpotent");
}

}  // namespace zmdiff
