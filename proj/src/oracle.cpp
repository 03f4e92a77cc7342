#include "zmdiff/oracle.hpp"

#include <algorithm>
#include <string>

namespace zmdiff::oracle {

namespace {

// The solutions of one linear congruence form an arithmetic progression.
struct StepSet {
  std::uint64_t first = 0;
  std::uint64_t stride = 1;
  std::uint64_t count = 0;
};

StepSet solve_step(std::uint64_t xn, std::uint64_t fn, std::uint64_t a,
                   std::uint64_t b, std::uint64_t m) {
  const std::uint64_t rhs = (a % m * xn + fn) % m;
  const std::uint64_t g = gcd(b % m, m);
  if (rhs % g != 0) return {};
  const std::uint64_t step = m / g;
  if (step == 1) return {0, 1, m};
  const Residue unit(static_cast<std::int64_t>(b % m / g), step);
  const Residue x0 = Residue(static_cast<std::int64_t>(rhs / g), step) * unit.inverse();
  return {x0.value(), step, g};
}

}  // namespace

std::vector<Residue> step_solutions(const Residue& xn, const Residue& fn,
                                    std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (xn.modulus() != m || fn.modulus() != m) {
    throw Error(ErrorCode::kModulusMismatch, "step operands must live in Z_m");
  }
  const StepSet set = solve_step(xn.value(), fn.value(), a, b, m);
  std::vector<Residue> out;
  out.reserve(set.count);
  for (std::uint64_t i = 0; i < set.count; ++i) {
    out.emplace_back(static_cast<std::int64_t>(set.first + i * set.stride), m);
  }
  return out;
}

bool PrefixSet::contains(std::span<const std::uint64_t> seq) const {
  if (seq.size() != horizon_) return false;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto r = row(mid);
    if (std::lexicographical_compare(r.begin(), r.end(), seq.begin(), seq.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::ranges::equal(row(lo), seq);
}

void PrefixSet::append(std::span<const Residue> seq) {
  if (seq.size() != horizon_) {
    throw Error(ErrorCode::kInvalidArgument, "prefix has the wrong length");
  }
  if (!empty()) {
    const auto last = row(size() - 1);
    bool ascending = false;
    for (std::size_t i = 0; i < horizon_; ++i) {
      if (last[i] != seq[i].value()) {
        ascending = last[i] < seq[i].value();
        break;
      }
    }
    if (!ascending) {
      throw Error(ErrorCode::kInvalidArgument, "prefixes must arrive in ascending order");
    }
  }
  for (const auto& x : seq) values_.push_back(x.value());
}

void for_each_prefix(const ProblemSpec& spec, std::size_t horizon,
                     std::optional<Residue> y0, std::uint64_t budget,
                     const PrefixVisitor& visit) {
  if (horizon == 0) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be at least 1");
  }
  const std::uint64_t m = spec.m();
  const std::uint64_t a = spec.a();
  const std::uint64_t b = spec.b();
  if (y0 && y0->modulus() != m) {
    throw Error(ErrorCode::kModulusMismatch, "initial value must live in Z_m");
  }

  struct Frame {
    StepSet set;
    std::uint64_t next = 0;
  };
  std::vector<Frame> stack;
  stack.reserve(horizon);
  stack.push_back({y0 ? StepSet{y0->value(), 1, 1} : StepSet{0, 1, m}});
  std::vector<Residue> row(horizon, Residue::zero(m));
  std::uint64_t explored = 0;

  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.set.count) {
      stack.pop_back();
      continue;
    }
    const std::size_t depth = stack.size() - 1;
    const std::uint64_t x = top.set.first + top.next * top.set.stride;
    ++top.next;
    if (++explored > budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "brute force exceeded its budget of " + std::to_string(budget) +
                      " states");
    }
    row[depth] = Residue(static_cast<std::int64_t>(x), m);
    if (depth + 1 == horizon) {
      if (!visit(row)) return;
      continue;
    }
    const Residue f = spec.forcing().term(depth);
    stack.push_back({solve_step(x, f.value(), a, b, m)});
  }
}

PrefixSet brute_force_prefixes(const ProblemSpec& spec, std::size_t horizon,
                               std::optional<Residue> y0, std::uint64_t budget) {
  PrefixSet out(spec.m(), horizon);
  for_each_prefix(spec, horizon, std::move(y0), budget,
                  [&](std::span<const Residue> seq) {
                    out.append(seq);
                    return true;
                  });
  return out;
}

std::uint64_t truncated_prefix_count(const PrefixSet& prefixes, std::size_t drop) {
  const std::size_t horizon = prefixes.horizon();
  if (drop >= horizon) {
    throw Error(ErrorCode::kInvalidArgument, "must keep at least one position");
  }
  const std::size_t keep = horizon - drop;
  // Rows are sorted, so equal restrictions are adjacent.
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    const auto cur = prefixes.row(i).first(keep);
    if (i == 0 || !std::ranges::equal(cur, prefixes.row(i - 1).first(keep))) ++count;
  }
  return count;
}

std::uint64_t count_truncated_prefixes(const ProblemSpec& spec, std::size_t horizon,
                                       std::size_t drop, std::optional<Residue> y0,
                                       std::uint64_t budget) {
  if (drop >= horizon) {
    throw Error(ErrorCode::kInvalidArgument, "must keep at least one position");
  }
  const std::size_t keep = horizon - drop;
  std::vector<Residue> last;
  std::uint64_t count = 0;
  for_each_prefix(spec, horizon, std::move(y0), budget,
                  [&](std::span<const Residue> seq) {
                    const auto cur = seq.first(keep);
                    if (last.empty() || !std::ranges::equal(cur, last)) {
                      last.assign(cur.begin(), cur.end());
                      ++count;
                    }
                    return true;
                  });
  return count;
}

bool prefix_exists(const ProblemSpec& spec, std::size_t horizon,
                   std::optional<Residue> y0, std::uint64_t budget) {
  bool found = false;
  for_each_prefix(spec, horizon, std::move(y0), budget,
                  [&](std::span<const Residue>) {
                    found = true;
                    return false;
                  });
  return found;
}

Verdict verify_solution(const ProblemSpec& spec, std::span<const Residue> seq,
                        std::optional<Residue> y0) {
  for (const auto& x : seq) {
    if (x.modulus() != spec.m()) {
      throw Error(ErrorCode::kModulusMismatch, "candidate terms must live in Z_m");
    }
  }
  if (y0 && !seq.empty() && seq.front() != *y0) {
    return {false, 0, true};
  }
  for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
    const Residue lhs = spec.B() * seq[n + 1];
    const Residue rhs = spec.A() * seq[n] + spec.forcing().term(n);
    if (lhs != rhs) return {false, n, false};
  }
  return {};
}

}  // namespace zmdiff::oracle
