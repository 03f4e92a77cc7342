#include "zmdiff/solver.hpp"

#include <sstream>
#include <string>

namespace zmdiff {

namespace {

SplitModuli split_of(const ProblemSpec& spec) {
  return split_modulus(factorize(spec.m()), spec.b());
}

std::string describe(const InitialClassification::NoSolution& none) {
  std::ostringstream os;
  if (const auto* w = std::get_if<InitialClassification::DivisibilityWitness>(&none.reason)) {
    os << "d does not divide f_" << w->index;
  } else {
    const auto& c = std::get<InitialClassification::CompatibilityMismatch>(none.reason);
    os << "initial value is incompatible: required " << c.required << ", got "
       << c.actual;
  }
  return os.str();
}

}  // namespace

const char* to_string(SolutionKind kind) noexcept {
  switch (kind) {
    case SolutionKind::kExplicit: return "explicit";
    case SolutionKind::kNilpotent: return "nilpotent";
    case SolutionKind::kMixed: return "mixed";
    case SolutionKind::kLifted: return "lifted";
  }
  return "unknown";
}

SplitProblem split_problem(const ProblemSpec& spec) {
  CrtIso iso(split_of(spec));
  const auto& s = iso.split();
  const auto& F = spec.forcing();
  auto to = [](std::uint64_t target) {
    return [target](const Residue& x) { return x.reduce_to(target); };
  };
  SplitProblem sp{iso,
                  spec.A().reduce_to(s.m1),
                  spec.B().reduce_to(s.m1),
                  F.transform(s.m1, to(s.m1)),
                  spec.A().reduce_to(s.m2),
                  spec.B().reduce_to(s.m2),
                  F.transform(s.m2, to(s.m2)),
                  std::nullopt};
  if (s.m2 != 1) sp.indB2 = nilpotency_index(sp.B2);
  return sp;
}

Residue explicit_solution(const Residue& A1, const Residue& B1, const Residue& x10,
                          const SequenceSpec& F1, std::uint64_t n) {
  const Residue binv = B1.inverse();
  Residue x = binv.pow(n) * A1.pow(n) * x10;
  // coef runs through A1^s B1^{-s-1}.
  Residue coef = binv;
  const Residue step = A1 * binv;
  for (std::uint64_t s = 0; s < n; ++s) {
    x += coef * F1.term(n - s - 1);
    coef *= step;
  }
  return x;
}

Residue nilpotent_solution(const Residue& A2, const Residue& B2,
                           const SequenceSpec& F2, std::uint64_t n) {
  const std::uint32_t k = nilpotency_index(B2);
  if (!F2.has_term(n + k - 1)) {
    throw Error(ErrorCode::kInsufficientLookahead,
                "X_" + std::to_string(n) + " needs forcing terms through f_" +
                    std::to_string(n + k - 1),
                n);
  }
  const Residue ainv = A2.inverse();
  Residue sum = Residue::zero(A2.modulus());
  // coef runs through A2^{-s-1} B2^s.
  Residue coef = ainv;
  const Residue step = ainv * B2;
  for (std::uint32_t s = 0; s < k; ++s) {
    sum += coef * F2.term(n + s);
    coef *= step;
  }
  return -sum;
}

Residue compatibility_residue(const SplitProblem& sp) {
  if (sp.iso.split().m2 == 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "no compatibility condition: the nilpotent side is trivial");
  }
  return nilpotent_solution(sp.A2, sp.B2, sp.F2, 0);
}

Classification classify_equation(const ProblemSpec& spec) {
  const std::uint64_t d = spec.d();
  if (d == 1) {
    return {Classification::Finite{split_of(spec).m1}, false};
  }
  if (auto witness = spec.forcing().first_nondivisible(d)) {
    return {Classification::None{*witness}, false};
  }
  const auto reduced = reduce_by_gcd(spec);
  const auto m1prime = split_of(reduced.primed()).m1;
  return {Classification::Infinite{d, m1prime}, !spec.forcing().is_periodic()};
}

InitialClassification classify_initial_problem(const ProblemSpec& spec,
                                               const Residue& y0) {
  using IC = InitialClassification;
  if (y0.modulus() != spec.m()) {
    throw Error(ErrorCode::kModulusMismatch, "initial value must live in Z_m");
  }
  const std::uint64_t d = spec.d();
  if (d == 1) {
    const auto sp = split_problem(spec);
    if (sp.iso.split().m2 == 1) return {IC::Unique{}, false};
    const Residue required = compatibility_residue(sp);
    const Residue actual = sp.iso.project(y0, CrtSide::kSecond);
    if (required == actual) return {IC::Unique{}, false};
    return {IC::NoSolution{IC::CompatibilityMismatch{required, actual}}, false};
  }
  if (auto witness = spec.forcing().first_nondivisible(d)) {
    return {IC::NoSolution{IC::DivisibilityWitness{*witness}}, false};
  }
  const bool qualified = !spec.forcing().is_periodic();
  const auto reduced = reduce_by_gcd(spec, y0);
  const auto sp = split_problem(reduced.primed());
  if (sp.iso.split().m2 == 1) return {IC::InfinitelyMany{}, qualified};
  const Residue required = compatibility_residue(sp);
  const Residue actual = sp.iso.project(*reduced.yprime0(), CrtSide::kSecond);
  if (required == actual) return {IC::InfinitelyMany{}, qualified};
  return {IC::NoSolution{IC::CompatibilityMismatch{required, actual}}, qualified};
}

Structure analyze(const ProblemSpec& spec) {
  Structure st;
  st.m = spec.m();
  st.d = spec.d();
  const auto split = split_of(spec);
  st.m1 = split.m1;
  st.m2 = split.m2;
  if (split.m2 != 1) st.indB2 = nilpotency_index(spec.B().reduce_to(split.m2));

  // The primed moduli depend only on a, b and m, so they are reported even
  // when the forcing is not divisible by d.
  st.mprime = st.m / st.d;
  const auto bprime = spec.b() / st.d;
  const auto split_prime = split_modulus(factorize(st.mprime), bprime);
  st.m1prime = split_prime.m1;
  st.m2prime = split_prime.m2;
  if (split_prime.m2 != 1) {
    st.indB2prime = nilpotency_index(Residue(static_cast<std::int64_t>(bprime),
                                             split_prime.m2));
  }
  const auto ind = st.indB2prime;
  st.lookahead = ind ? *ind - 1 : 0;
  st.forced_tail = ind ? *ind : 0;

  try {
    if (st.d == 1 && st.m2 != 1) {
      st.compatibility = compatibility_residue(split_problem(spec));
    } else if (st.d != 1 && st.m2prime != 1 &&
               !spec.forcing().first_nondivisible(st.d)) {
      st.compatibility =
          compatibility_residue(split_problem(reduce_by_gcd(spec).primed()));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientLookahead) throw;
  }
  return st;
}

// --- GeneralSolution ---------------------------------------------------------

GeneralSolution::GeneralSolution(SolutionKind kind, Core core, std::uint64_t m,
                                 std::uint64_t d, std::uint64_t free_modulus,
                                 std::optional<std::uint64_t> alpha0)
    : kind_(kind),
      core_(std::move(core)),
      m_(m),
      d_(d),
      free_modulus_(free_modulus),
      alpha0_(alpha0) {}

GeneralSolution::Core GeneralSolution::make_core(const ProblemSpec& spec,
                                                 std::optional<Residue> initial) {
  auto split = split_problem(spec);
  const auto& s = split.iso.split();
  SolutionKind kind = SolutionKind::kMixed;
  if (s.m2 == 1) {
    kind = SolutionKind::kExplicit;
  } else if (s.m1 == 1) {
    kind = SolutionKind::kNilpotent;
  }
  return Core{kind, spec, std::move(split), std::move(initial)};
}

Residue GeneralSolution::Core::at(std::uint64_t free_initial, std::uint64_t n) const {
  const auto& s = split.iso.split();
  switch (kind) {
    case SolutionKind::kExplicit: {
      const Residue x0 =
          initial ? *initial : Residue(static_cast<std::int64_t>(free_initial), s.m);
      return explicit_solution(spec.A(), spec.B(), x0, spec.forcing(), n);
    }
    case SolutionKind::kNilpotent:
      return nilpotent_solution(spec.A(), spec.B(), spec.forcing(), n);
    case SolutionKind::kMixed: {
      const Residue x10 =
          initial ? split.iso.project(*initial, CrtSide::kFirst)
                  : Residue(static_cast<std::int64_t>(free_initial), s.m1);
      return split.iso.psi(explicit_solution(split.A1, split.B1, x10, split.F1, n),
                           nilpotent_solution(split.A2, split.B2, split.F2, n));
    }
    case SolutionKind::kLifted:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "core solution cannot be lifted");
}

std::uint64_t GeneralSolution::lookahead() const noexcept {
  const auto& ind = core_.split.indB2;
  return ind ? *ind - 1 : 0;
}

std::uint64_t GeneralSolution::forced_tail() const noexcept {
  const auto& ind = core_.split.indB2;
  return ind ? *ind : 0;
}

std::optional<std::uint64_t> GeneralSolution::evaluable_length() const {
  const auto& F = core_.spec.forcing();
  if (F.is_periodic()) return std::nullopt;
  const std::uint64_t size = F.prefix().size();
  if (core_.split.indB2) {
    const std::uint64_t k = *core_.split.indB2;
    return size + 1 >= k ? size + 1 - k : 0;
  }
  return size + 1;
}

void GeneralSolution::validate(const SolutionParameters& params) const {
  if (params.free_initial >= free_modulus_) {
    throw Error(ErrorCode::kInvalidArgument,
                "free initial residue " + std::to_string(params.free_initial) +
                    " is not below " + std::to_string(free_modulus_));
  }
  for (std::size_t n = 0; n < params.alpha.size(); ++n) {
    if (params.alpha[n] >= d_) {
      throw Error(ErrorCode::kInvalidLiftDigit,
                  "lift digit alpha_" + std::to_string(n) + " = " +
                      std::to_string(params.alpha[n]) + " is not below " +
                      std::to_string(d_),
                  n);
    }
  }
}

Residue GeneralSolution::lift(const Residue& core_value,
                              const SolutionParameters& params,
                              std::uint64_t n) const {
  if (kind_ != SolutionKind::kLifted) return core_value;
  std::uint64_t digit = n < params.alpha.size() ? params.alpha[n] : 0;
  if (n == 0 && alpha0_) digit = *alpha0_;
  const std::uint64_t mprime = core_value.modulus();
  return Residue(static_cast<std::int64_t>(core_value.value() + digit * mprime), m_);
}

Residue GeneralSolution::at(const SolutionParameters& params, std::uint64_t n) const {
  validate(params);
  return lift(core_.at(params.free_initial, n), params, n);
}

std::vector<Residue> GeneralSolution::prefix(const SolutionParameters& params,
                                             std::uint64_t length) const {
  validate(params);
  std::vector<Residue> out;
  out.reserve(length);
  for (std::uint64_t n = 0; n < length; ++n) {
    out.push_back(lift(core_.at(params.free_initial, n), params, n));
  }
  return out;
}

GeneralSolution general_solution(const ProblemSpec& spec) {
  const auto cls = classify_equation(spec);
  if (const auto* none = std::get_if<Classification::None>(&cls.verdict)) {
    throw Error(ErrorCode::kUnsolvable,
                "no solutions: d does not divide f_" +
                    std::to_string(none->witness_index),
                none->witness_index);
  }
  if (spec.d() == 1) {
    auto core = GeneralSolution::make_core(spec, std::nullopt);
    const auto kind = core.kind;
    const auto free = core.split.iso.split().m1;
    return GeneralSolution(kind, std::move(core), spec.m(), 1, free, std::nullopt);
  }
  // The reduced equation has gcd(a/d, b/d, m') = 1, so one step of reduction
  // always lands in the coprime machinery.
  const auto reduced = reduce_by_gcd(spec);
  auto core = GeneralSolution::make_core(reduced.primed(), std::nullopt);
  const auto free = core.split.iso.split().m1;
  return GeneralSolution(SolutionKind::kLifted, std::move(core), spec.m(),
                         reduced.d(), free, std::nullopt);
}

GeneralSolution solve_initial_problem(const ProblemSpec& spec, const Residue& y0) {
  const auto cls = classify_initial_problem(spec, y0);
  if (const auto* none = std::get_if<InitialClassification::NoSolution>(&cls.verdict)) {
    throw Error(ErrorCode::kUnsolvable, "no solutions: " + describe(*none));
  }
  if (spec.d() == 1) {
    auto core = GeneralSolution::make_core(spec, y0);
    const auto kind = core.kind;
    return GeneralSolution(kind, std::move(core), spec.m(), 1, 1, std::nullopt);
  }
  const auto reduced = reduce_by_gcd(spec, y0);
  auto core = GeneralSolution::make_core(reduced.primed(), reduced.yprime0());
  // Choose alpha_0 so that x'_0 + alpha_0 m' = y0 (mod m): with
  // beta = (y0 - x'_0) / m', alpha_0 = beta mod d.
  const std::uint64_t mprime = reduced.mprime();
  const auto xprime0 = static_cast<std::int64_t>(core.at(0, 0).value());
  const std::int64_t beta = (static_cast<std::int64_t>(y0.value()) - xprime0) /
                            static_cast<std::int64_t>(mprime);
  const auto d = static_cast<std::int64_t>(reduced.d());
  const auto alpha0 = static_cast<std::uint64_t>(((beta % d) + d) % d);
  return GeneralSolution(SolutionKind::kLifted, std::move(core), spec.m(),
                         reduced.d(), 1, alpha0);
}

}  // namespace zmdiff
