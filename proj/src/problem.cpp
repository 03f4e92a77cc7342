#include "zmdiff/problem.hpp"

#include <string>

namespace zmdiff {

SequenceSpec::SequenceSpec(std::uint64_t modulus, std::vector<Residue> prefix,
                           std::optional<std::uint64_t> period)
    : modulus_(modulus), prefix_(std::move(prefix)), period_(period) {
  if (modulus == 0 || modulus > kMaxModulus) {
    throw Error(ErrorCode::kInvalidModulus, "sequence modulus out of range");
  }
  for (const auto& f : prefix_) {
    if (f.modulus() != modulus_) {
      throw Error(ErrorCode::kModulusMismatch,
                  "sequence term outside Z_" + std::to_string(modulus_));
    }
  }
  if (period_ && (*period_ == 0 || *period_ > prefix_.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "period must lie in [1, prefix length]");
  }
}

SequenceSpec SequenceSpec::from_integers(std::uint64_t modulus,
                                         std::span<const std::int64_t> values,
                                         std::optional<std::uint64_t> period) {
  std::vector<Residue> prefix;
  prefix.reserve(values.size());
  for (auto v : values) prefix.emplace_back(v, modulus);
  return SequenceSpec(modulus, std::move(prefix), period);
}

bool SequenceSpec::has_term(std::uint64_t n) const noexcept {
  return n < prefix_.size() || period_.has_value();
}

Residue SequenceSpec::term(std::uint64_t n) const {
  const std::uint64_t size = prefix_.size();
  if (n < size) return prefix_[n];
  if (!period_) {
    throw Error(ErrorCode::kInsufficientData,
                "forcing term f_" + std::to_string(n) + " is not available", n);
  }
  const std::uint64_t start = size - *period_;
  return prefix_[start + (n - start) % *period_];
}

std::optional<std::uint64_t> SequenceSpec::first_nondivisible(std::uint64_t d) const {
  for (std::uint64_t n = 0; n < prefix_.size(); ++n) {
    if (prefix_[n].value() % d != 0) return n;
  }
  return std::nullopt;
}

SequenceSpec SequenceSpec::transform(
    std::uint64_t target_modulus,
    const std::function<Residue(const Residue&)>& fn) const {
  std::vector<Residue> out;
  out.reserve(prefix_.size());
  for (const auto& f : prefix_) out.push_back(fn(f));
  return SequenceSpec(target_modulus, std::move(out), period_);
}

ProblemSpec::ProblemSpec(std::uint64_t m, std::int64_t a, std::int64_t b,
                         SequenceSpec forcing)
    : ProblemSpec(AllowNullRing{}, m, a, b, std::move(forcing)) {
  if (m < 2) {
    throw Error(ErrorCode::kInvalidModulus, "the equation needs m >= 2");
  }
}

ProblemSpec::ProblemSpec(AllowNullRing, std::uint64_t m, std::int64_t a,
                         std::int64_t b, SequenceSpec forcing)
    : m_(m), A_(a, m), B_(b, m), forcing_(std::move(forcing)) {
  if (forcing_.modulus() != m_) {
    throw Error(ErrorCode::kModulusMismatch,
                "forcing sequence must live in Z_" + std::to_string(m_));
  }
}

std::uint64_t ProblemSpec::d() const { return gcd(gcd(a(), b()), m_); }

ReducedSpec reduce_by_gcd(const ProblemSpec& spec, std::optional<Residue> y0) {
  const std::uint64_t d = spec.d();
  if (auto witness = spec.forcing().first_nondivisible(d)) {
    throw Error(ErrorCode::kNonDivisibleForcing,
                std::to_string(d) + " does not divide f_" + std::to_string(*witness),
                *witness);
  }
  if (y0 && y0->modulus() != spec.m()) {
    throw Error(ErrorCode::kModulusMismatch, "initial value must live in Z_m");
  }
  const std::uint64_t mprime = spec.m() / d;
  auto fprime = spec.forcing().transform(mprime, [&](const Residue& f) {
    return Residue(static_cast<std::int64_t>(f.value() / d), mprime);
  });
  ProblemSpec primed(ProblemSpec::AllowNullRing{}, mprime,
                     static_cast<std::int64_t>(spec.a() / d),
                     static_cast<std::int64_t>(spec.b() / d), std::move(fprime));
  std::optional<Residue> yprime0;
  if (y0) yprime0 = y0->reduce_to(mprime);
  return ReducedSpec(d, std::move(primed), std::move(yprime0));
}

std::vector<Residue> lift_solution(std::span<const Residue> xprime,
                                   std::span<const std::uint64_t> alpha,
                                   std::uint64_t d, std::uint64_t m) {
  if (d == 0 || m % d != 0) {
    throw Error(ErrorCode::kInvalidArgument, "d must divide m");
  }
  if (xprime.size() != alpha.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "lift needs one digit per primed term");
  }
  const std::uint64_t mprime = m / d;
  std::vector<Residue> out;
  out.reserve(xprime.size());
  for (std::size_t n = 0; n < xprime.size(); ++n) {
    if (alpha[n] >= d) {
      throw Error(ErrorCode::kInvalidLiftDigit,
                  "lift digit alpha_" + std::to_string(n) + " = " +
                      std::to_string(alpha[n]) + " is not below " + std::to_string(d),
                  n);
    }
    if (xprime[n].modulus() != mprime) {
      throw Error(ErrorCode::kModulusMismatch, "primed term must live in Z_m'");
    }
    out.emplace_back(static_cast<std::int64_t>(xprime[n].value() + alpha[n] * mprime), m);
  }
  return out;
}

std::pair<std::vector<Residue>, std::vector<std::uint64_t>> unlift_solution(
    std::span<const Residue> x, std::uint64_t d) {
  std::pair<std::vector<Residue>, std::vector<std::uint64_t>> out;
  for (const auto& xn : x) {
    if (d == 0 || xn.modulus() % d != 0) {
      throw Error(ErrorCode::kInvalidArgument, "d must divide m");
    }
    const std::uint64_t mprime = xn.modulus() / d;
    out.first.push_back(xn.reduce_to(mprime));
    out.second.push_back(xn.value() / mprime);
  }
  return out;
}

}  // namespace zmdiff
