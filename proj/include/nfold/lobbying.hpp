#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "core.hpp"
#include "reduction.hpp"

namespace nfold::lobbying {

/// Binary voter-by-issue matrix and a budget of voters to influence.
/// Identical rows are grouped into row types (sorted lexicographically).
class LobbyingInstance {
 public:
  LobbyingInstance(std::vector<std::vector<int>> rows, std::size_t issues, Int budget)
      : issues_(issues), budget_(budget), voters_(rows.size()) {
    if (budget < 0) throw PreconditionError("lobbying budget must be non-negative");
    std::map<std::vector<int>, Int> grouped;
    std::vector<Int> ones(issues, 0);
    for (const auto& row : rows) {
      if (row.size() != issues) throw PreconditionError("lobbying matrix rows must all have " + std::to_string(issues) + " entries");
      for (std::size_t j = 0; j < issues; ++j) {
        if (row[j] != 0 && row[j] != 1) throw PreconditionError("lobbying matrix must be binary");
        ones[j] += row[j];
      }
      ++grouped[row];
    }
    for (auto& [type, count] : grouped) {
      types_.push_back(type);
      multiplicity_.push_back(count);
    }
    const Int majority = static_cast<Int>(voters_ / 2) + 1;
    for (std::size_t j = 0; j < issues; ++j) deficit_.push_back(std::max<Int>(0, majority - ones[j]));
  }

  std::size_t issues() const { return issues_; }
  std::size_t voters() const { return voters_; }
  Int budget() const { return budget_; }
  std::size_t type_count() const { return types_.size(); }
  const std::vector<int>& type(std::size_t i) const { return types_[i]; }
  Int multiplicity(std::size_t i) const { return multiplicity_[i]; }
  /// 1 when type i has a 0 on issue j, so influencing it gains a 1 there.
  int gains(std::size_t i, std::size_t j) const { return types_[i][j] == 0 ? 1 : 0; }
  /// Missing 1s on issue j for a strict majority.
  Int deficit(std::size_t j) const { return deficit_[j]; }

 private:
  std::size_t issues_;
  Int budget_;
  std::size_t voters_;
  std::vector<std::vector<int>> types_;
  std::vector<Int> multiplicity_;
  std::vector<Int> deficit_;
};

/// One block per row type with a single variable (voters of that type
/// influenced): -gains <= -deficit on every issue, at most the type's
/// multiplicity per block, unit cost.
inline NFoldInstance lobbying_to_ilp(const LobbyingInstance& inst) {
  const std::size_t types = inst.type_count();
  const std::size_t m = inst.issues();
  std::vector<IntMatrix> blocks;
  IntVector b_local;
  std::vector<IntVector> cost;
  for (std::size_t i = 0; i < types; ++i) {
    IntMatrix block(m, 1);
    for (std::size_t j = 0; j < m; ++j) block(j, 0) = -inst.gains(i, j);
    blocks.push_back(std::move(block));
    b_local.push_back(inst.multiplicity(i));
    cost.push_back({1});
  }
  IntVector b_top;
  for (std::size_t j = 0; j < m; ++j) b_top.push_back(-inst.deficit(j));
  return NFoldInstance(types, 1, m, std::move(blocks), std::move(b_top), std::move(b_local), std::move(cost),
                       std::vector<Relation>(m, Relation::LE), std::vector<Relation>(types, Relation::LE));
}

struct LobbyingResult {
  bool yes = false;
  /// Fewest voters that must be influenced, if any choice works at all.
  std::optional<Int> optimum;
  /// Influenced voters per row type, witnessing `optimum`.
  std::vector<Int> flips;
};

inline LobbyingResult lobbying_solve(const LobbyingInstance& inst) {
  LobbyingResult out;
  if (inst.type_count() == 0) {
    // No voters: a strict majority is impossible unless there are no issues.
    if (inst.issues() == 0) {
      out.optimum = 0;
      out.yes = true;
    }
    return out;
  }
  auto sol = solve_general(lobbying_to_ilp(inst));
  if (!sol) return out;
  out.optimum = sol->objective;
  out.yes = sol->objective <= inst.budget();
  for (const auto& brick : sol->bricks) out.flips.push_back(brick[0]);
  return out;
}

}  // namespace nfold::lobbying
