#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "core.hpp"

// Exhaustive reference solvers. Nothing here may depend on the balancer, the
// layered solver or the reduction: these results are the ground truth those
// modules are tested against.

namespace nfold {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

namespace detail {

// C(a, b) saturating at `cap`.
inline std::uint64_t binomial_capped(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    acc = acc * (a - b + i) / i;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

class BruteForce {
 public:
  explicit BruteForce(const NFoldInstance& inst) : inst_(inst), x_(zero_bricks(inst.n(), inst.t())), acc_(inst.r(), 0) {
    remaining_after_.assign(inst.n() + 1, 0);
    for (std::size_t i = inst.n(); i-- > 0;) remaining_after_[i] = checked::add(remaining_after_[i + 1], inst.b_local()[i]);
  }

  std::optional<Solution> run() {
    descend(0, 0, 0, 0);
    return best_;
  }

 private:
  bool hopeless(Int mass_left) const {
    const Int reach = checked::mul(inst_.delta(), mass_left);
    for (std::size_t k = 0; k < inst_.r(); ++k) {
      const Int lo = checked::sub(acc_[k], reach);
      const Int hi = checked::add(acc_[k], reach);
      const Int b = inst_.b_top()[k];
      switch (inst_.global_relations()[k]) {
        case Relation::EQ:
          if (b < lo || b > hi) return true;
          break;
        case Relation::LE:
          if (lo > b) return true;
          break;
        case Relation::GE:
          if (hi < b) return true;
          break;
      }
    }
    return false;
  }

  // Assign x[block][col] given `used` units already placed in this brick.
  void descend(std::size_t block, std::size_t col, Int used, Int cost) {
    if (block == inst_.n()) {
      for (std::size_t k = 0; k < inst_.r(); ++k)
        if (!satisfies(acc_[k], inst_.global_relations()[k], inst_.b_top()[k])) return;
      if (!best_ || cost < best_->objective) best_ = Solution{x_, cost};
      return;
    }
    const Int cap = inst_.b_local()[block];
    const bool exact = inst_.local_relations()[block] == Relation::EQ;
    if (hopeless(checked::add(cap - used, remaining_after_[block + 1]))) return;

    const std::size_t t = inst_.t();
    if (col + 1 == t) {
      const Int first = exact ? cap - used : 0;
      for (Int v = first; v <= cap - used; ++v) place(block, col, v, [&] { descend(block + 1, 0, 0, cost_with(block, col, v, cost)); });
      return;
    }
    for (Int v = 0; v <= cap - used; ++v)
      place(block, col, v, [&] { descend(block, col + 1, used + v, cost_with(block, col, v, cost)); });
  }

  Int cost_with(std::size_t block, std::size_t col, Int v, Int cost) const {
    return checked::add(cost, checked::mul(inst_.cost()[block][col], v));
  }

  template <typename F>
  void place(std::size_t block, std::size_t col, Int v, F&& next) {
    x_[block][col] = v;
    for (std::size_t k = 0; k < inst_.r(); ++k) acc_[k] = checked::add(acc_[k], checked::mul(inst_.block(block)(k, col), v));
    next();
    for (std::size_t k = 0; k < inst_.r(); ++k) acc_[k] -= inst_.block(block)(k, col) * v;
    x_[block][col] = 0;
  }

  const NFoldInstance& inst_;
  BrickVector x_;
  IntVector acc_;
  std::vector<Int> remaining_after_;
  std::optional<Solution> best_;
};

}  // namespace detail

/// Number of brick assignments the exhaustive search would visit, saturating
/// just above `cap`.
inline std::uint64_t enumeration_size(const NFoldInstance& inst, std::uint64_t cap) {
  std::uint64_t total = 1;
  const auto t = static_cast<std::uint64_t>(inst.t());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const auto b = static_cast<std::uint64_t>(inst.b_local()[i]);
    std::uint64_t per = inst.local_relations()[i] == Relation::EQ ? detail::binomial_capped(b + t - 1, t - 1, cap)
                                                                  : detail::binomial_capped(b + t, t, cap);
    if (per == 0) return 0;
    if (total > cap / per) return cap + 1;
    total *= per;
  }
  return total;
}

/// Exhaustive optimum over every brick assignment satisfying all relations.
/// Among optimal solutions the lexicographically smallest is returned.
inline std::optional<Solution> brute_force_solve_p2(const NFoldInstance& inst,
                                                    std::uint64_t budget = kDefaultEnumerationBudget) {
  require_valid(inst);
  if (enumeration_size(inst, budget) > budget)
    throw SizeLimitError("instance exceeds the enumeration budget of " + std::to_string(budget));
  return detail::BruteForce(inst).run();
}

/// Exhaustive optimum of an equality-form instance.
inline std::optional<Solution> brute_force_solve(const NFoldInstance& inst,
                                                 std::uint64_t budget = kDefaultEnumerationBudget) {
  if (!inst.is_equality_form()) throw PreconditionError("brute_force_solve requires an equality-form instance");
  return brute_force_solve_p2(inst, budget);
}

}  // namespace nfold
