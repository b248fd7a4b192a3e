#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "arith.hpp"
#include "core.hpp"
#include "dag_solver.hpp"

namespace nfold {

/// Bookkeeping needed to move solutions between a mixed-relation program and
/// the equality program built from it.
///
/// Column layout of the constructed program (0-based, per block):
///   [0, t)          original variables (zero columns in the appended block)
///   t               local slack (blocks 1..n) / filler (appended block)
///   t+1 .. t+r      identity columns, one per top row
struct ReductionMap {
  Int psi = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t r = 0;
  std::vector<std::size_t> negated_rows;
  Int filler_mass = 0;

  std::size_t local_slack_column() const { return t; }
  std::size_t filler_column() const { return t; }
  std::size_t global_slack_column(std::size_t row) const { return t + 1 + row; }
  std::size_t appended_block() const { return n; }
};

/// Big-M penalty 2 + 2*||c||_inf*q. Every objective value of the original
/// program has absolute value at most ||c||_inf*q < psi/2, and every solution
/// of the constructed program that pays a penalty costs more than psi/2.
inline Int penalty_value(const NFoldInstance& inst) {
  return checked::add(2, checked::mul(2, checked::mul(inst.cost_norm(), inst.q())));
}

/// Builds an equality-form program with the same optimum as `inst`:
///  * '>=' top rows are negated into '<=' rows;
///  * each block gains a zero top column (local slack; cost 0 for '<=', psi
///    for '=') and r identity columns of cost psi;
///  * an extra block (0 | 0 | I_r) absorbs top-row slack: identity columns
///    cost 0 on '<=' rows and psi on '=' rows, its other columns cost 0;
///  * the extra block's local right-hand side bounds the total slack of the
///    '<=' rows over all solutions respecting the local rows.
inline std::pair<NFoldInstance, ReductionMap> reduce_to_equality(const NFoldInstance& inst) {
  using namespace checked;
  require_valid(inst);
  const std::size_t n = inst.n(), t = inst.t(), r = inst.r();

  ReductionMap map;
  map.psi = penalty_value(inst);
  map.n = n;
  map.t = t;
  map.r = r;

  std::vector<Int> row_sign(r, 1);
  std::vector<Relation> rel(inst.global_relations());
  IntVector b_top(inst.b_top());
  for (std::size_t k = 0; k < r; ++k) {
    if (rel[k] == Relation::GE) {
      row_sign[k] = -1;
      rel[k] = Relation::LE;
      b_top[k] = neg(b_top[k]);
      map.negated_rows.push_back(k);
    }
  }

  const std::size_t width = t + r + 1;
  std::vector<IntMatrix> blocks;
  std::vector<IntVector> cost;
  blocks.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix block(r, width, 0);
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t j = 0; j < t; ++j) block(k, j) = mul(row_sign[k], inst.block(i)(k, j));
      block(k, map.global_slack_column(k)) = 1;
    }
    IntVector c(width, map.psi);
    std::copy(inst.cost()[i].begin(), inst.cost()[i].end(), c.begin());
    c[map.local_slack_column()] = inst.local_relations()[i] == Relation::LE ? 0 : map.psi;
    blocks.push_back(std::move(block));
    cost.push_back(std::move(c));
  }

  // Slack of a '<=' row k is b_top[k] - A[k]y, and A[k]y >= -sum_i b_i * max(0, -min_j T(i)[k,j]).
  Int filler = 0;
  for (std::size_t k = 0; k < r; ++k) {
    if (rel[k] != Relation::LE) continue;
    Int worst = b_top[k];
    for (std::size_t i = 0; i < n; ++i) {
      Int most_negative = 0;
      for (std::size_t j = 0; j < t; ++j) most_negative = std::min(most_negative, mul(row_sign[k], inst.block(i)(k, j)));
      worst = add(worst, mul(inst.b_local()[i], neg(most_negative)));
    }
    filler = add(filler, std::max<Int>(0, worst));
  }
  map.filler_mass = filler;

  IntMatrix extra(r, width, 0);
  IntVector extra_cost(width, 0);
  for (std::size_t k = 0; k < r; ++k) {
    extra(k, map.global_slack_column(k)) = 1;
    extra_cost[map.global_slack_column(k)] = rel[k] == Relation::LE ? 0 : map.psi;
  }
  blocks.push_back(std::move(extra));
  cost.push_back(std::move(extra_cost));

  IntVector b_local(inst.b_local());
  b_local.push_back(filler);

  NFoldInstance reduced(n + 1, width, r, std::move(blocks), std::move(b_top), std::move(b_local), std::move(cost));
  return {std::move(reduced), std::move(map)};
}

/// Maps an optimal solution of the constructed program back. Objectives of at
/// least psi/2 mean a penalty column was needed, so the original program has
/// no solution.
inline std::optional<Solution> lift_solution(const ReductionMap& map, const Solution& sol) {
  if (sol.bricks.size() != map.n + 1) throw PreconditionError("lift_solution: brick count does not match the reduction");
  for (const auto& brick : sol.bricks)
    if (brick.size() != map.t + map.r + 1) throw PreconditionError("lift_solution: brick length does not match the reduction");
  if (checked::mul(2, sol.objective) >= map.psi) return std::nullopt;
  Solution out;
  out.objective = sol.objective;
  for (std::size_t i = 0; i < map.n; ++i)
    out.bricks.emplace_back(sol.bricks[i].begin(), sol.bricks[i].begin() + static_cast<std::ptrdiff_t>(map.t));
  return out;
}

/// Forward map: a feasible solution y of the original program becomes a
/// feasible solution of the constructed program with the same cost.
inline BrickVector embed_solution(const NFoldInstance& original, const ReductionMap& map, const BrickVector& y) {
  using namespace checked;
  require_brick_shape(original, y);
  const std::size_t width = map.t + map.r + 1;
  BrickVector x(map.n + 1, IntVector(width, 0));
  for (std::size_t i = 0; i < map.n; ++i) {
    Int used = 0;
    for (std::size_t j = 0; j < map.t; ++j) {
      x[i][j] = y[i][j];
      used = add(used, y[i][j]);
    }
    x[i][map.local_slack_column()] = sub(original.b_local()[i], used);
  }
  IntVector activity = top_row_activity(original, y);
  Int slack_total = 0;
  for (std::size_t k = 0; k < map.r; ++k) {
    Int slack = sub(original.b_top()[k], activity[k]);
    if (original.global_relations()[k] == Relation::GE) slack = neg(slack);
    x[map.appended_block()][map.global_slack_column(k)] = slack;
    slack_total = add(slack_total, slack);
  }
  x[map.appended_block()][map.filler_column()] = sub(map.filler_mass, slack_total);
  return x;
}

struct GeneralSolveOutcome {
  std::optional<Solution> solution;
  SolveStats stats;
  bool reduced = false;
};

/// Solves a program with mixed relations. Equality-form input goes straight
/// to the layered solver; anything else is reduced, solved and lifted.
inline GeneralSolveOutcome solve_general_with_stats(const NFoldInstance& inst, const SolveOptions& options = {}) {
  require_valid(inst);
  GeneralSolveOutcome out;
  if (inst.is_equality_form()) {
    auto res = solve_with_stats(inst, options);
    out.solution = std::move(res.solution);
    out.stats = res.stats;
    return out;
  }
  auto [reduced, map] = reduce_to_equality(inst);
  auto res = solve_with_stats(reduced, options);
  out.reduced = true;
  out.stats = res.stats;
  if (res.solution) out.solution = lift_solution(map, *res.solution);
  return out;
}

inline std::optional<Solution> solve_general(const NFoldInstance& inst, const SolveOptions& options = {}) {
  return solve_general_with_stats(inst, options).solution;
}

}  // namespace nfold
