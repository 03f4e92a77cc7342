#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace zmdiff {

enum class ErrorCode {
  kInvalidModulus,
  kModulusMismatch,
  kNotInvertible,
  kNotNilpotent,
  kInsufficientData,
  kInsufficientLookahead,
  kNonDivisibleForcing,
  kInvalidLiftDigit,
  kInvalidArgument,
  kUnsolvable,
  kBudgetExceeded,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library. `index()` carries the sequence index
// the failure refers to (InsufficientData, NonDivisibleForcing, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::uint64_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::uint64_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::uint64_t> index_;
};

}  // namespace zmdiff
