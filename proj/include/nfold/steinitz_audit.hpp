#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "arith.hpp"
#include "balancer.hpp"
#include "core.hpp"
#include "dag_solver.hpp"

namespace nfold {

/// Ordered list of integer columns in Z^r.
class ColumnSequence {
 public:
  ColumnSequence() = default;
  explicit ColumnSequence(std::size_t dim) : dim_(dim), total_(dim, 0) {}
  ColumnSequence(std::size_t dim, std::vector<IntVector> columns) : ColumnSequence(dim) {
    for (auto& c : columns) push_back(std::move(c));
  }

  void push_back(IntVector column) {
    if (column.size() != dim_) throw PreconditionError("column dimension differs from sequence dimension");
    for (std::size_t k = 0; k < dim_; ++k) {
      total_[k] = checked::add(total_[k], column[k]);
      delta_ = std::max(delta_, checked::abs(column[k]));
    }
    columns_.push_back(std::move(column));
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  const IntVector& operator[](std::size_t i) const { return columns_[i]; }
  const std::vector<IntVector>& columns() const { return columns_; }
  const IntVector& total() const { return total_; }
  /// Largest max-norm over the columns.
  Int delta() const { return delta_; }

  friend bool operator==(const ColumnSequence& a, const ColumnSequence& b) {
    return a.dim_ == b.dim_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> columns_;
  IntVector total_;
  Int delta_ = 0;
};

/// Rational vector numer / denom with a shared positive denominator.
struct RationalVector {
  IntVector numer;
  Int denom = 1;
};

using CenterFn = std::function<RationalVector(Int prefix)>;

/// Center (j/q) * target, the proportional share after j of q columns.
inline CenterFn proportional_center(IntVector target, Int q) {
  return [target = std::move(target), q](Int prefix) {
    RationalVector c{IntVector(target.size()), q};
    for (std::size_t k = 0; k < target.size(); ++k) c.numer[k] = checked::mul(prefix, target[k]);
    return c;
  };
}

namespace detail {

inline bool within_slack(const IntVector& psum, const RationalVector& center, Int slack_lo, Int slack_hi) {
  using namespace checked;
  const Int d = center.denom;
  if (d <= 0) throw PreconditionError("center denominator must be positive");
  for (std::size_t k = 0; k < psum.size(); ++k) {
    Int dev = sub(mul(d, psum[k]), center.numer[k]);
    if (dev < mul(d, slack_lo) || dev > mul(d, slack_hi)) return false;
  }
  return true;
}

}  // namespace detail

/// True iff slack_lo <= psum(j)[k] - center(j)[k] <= slack_hi for every
/// prefix length j = 1..m and coordinate k.
inline bool partial_sum_check(const ColumnSequence& cols, const CenterFn& center, Int slack_lo, Int slack_hi) {
  IntVector psum(cols.dim(), 0);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t k = 0; k < cols.dim(); ++k) psum[k] = checked::add(psum[k], cols[j][k]);
    RationalVector c = center(static_cast<Int>(j + 1));
    if (c.numer.size() != cols.dim()) throw PreconditionError("center dimension mismatch");
    if (!detail::within_slack(psum, c, slack_lo, slack_hi)) return false;
  }
  return true;
}

inline constexpr std::size_t kMaxReorderingColumns = 10;

namespace detail {

// Distinct columns with multiplicities, in first-appearance order.
struct ColumnMultiset {
  std::vector<IntVector> values;
  std::vector<Int> counts;

  void add(const IntVector& col) {
    auto it = std::find(values.begin(), values.end(), col);
    if (it == values.end()) {
      values.push_back(col);
      counts.push_back(1);
    } else {
      ++counts[static_cast<std::size_t>(it - values.begin())];
    }
  }
};

}  // namespace detail

/// Exhaustive search for an ordering whose every prefix j satisfies
/// ||psum(j) - (j/m) s||_inf <= bound. Prefixes violating the bound are
/// abandoned immediately; identical columns are branched on once.
inline bool exists_bounded_reordering(const ColumnSequence& cols, Int bound) {
  const std::size_t m = cols.size();
  if (m > kMaxReorderingColumns) throw SizeLimitError("exists_bounded_reordering is limited to 10 columns");
  if (m == 0) return true;
  detail::ColumnMultiset pool;
  for (const auto& c : cols.columns()) pool.add(c);
  const std::size_t dim = cols.dim();
  const Int mm = static_cast<Int>(m);
  const Int limit = checked::mul(mm, bound);
  IntVector psum(dim, 0);

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == m) return true;
    const Int j = static_cast<Int>(depth + 1);
    for (std::size_t v = 0; v < pool.values.size(); ++v) {
      if (pool.counts[v] == 0) continue;
      bool ok = true;
      for (std::size_t k = 0; k < dim; ++k) {
        Int next = psum[k] + pool.values[v][k];
        Int dev = checked::sub(checked::mul(mm, next), checked::mul(j, cols.total()[k]));
        if (checked::abs(dev) > limit) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (std::size_t k = 0; k < dim; ++k) psum[k] += pool.values[v][k];
      --pool.counts[v];
      bool found = extend(depth + 1);
      ++pool.counts[v];
      for (std::size_t k = 0; k < dim; ++k) psum[k] -= pool.values[v][k];
      if (found) return true;
    }
    return false;
  };
  return extend(0);
}

/// Places the w-th column of block i at the w-th occurrence of i in the
/// schedule.
inline ColumnSequence assemble_interleaving(const BalancedSchedule& sched,
                                            const std::vector<ColumnSequence>& per_block) {
  if (per_block.size() != sched.symbols()) throw PreconditionError("assemble_interleaving: block count mismatch");
  for (std::size_t i = 0; i < per_block.size(); ++i)
    if (static_cast<Int>(per_block[i].size()) != sched.counts[i])
      throw PreconditionError("assemble_interleaving: block " + std::to_string(i + 1) + " has the wrong number of columns");
  std::size_t dim = per_block.empty() ? 0 : per_block.front().dim();
  ColumnSequence out(dim);
  std::vector<std::size_t> next(per_block.size(), 0);
  for (std::size_t e : sched.entries) out.push_back(per_block[e][next[e]++]);
  return out;
}

/// Per-block column multisets of a solution: column k of T(i) repeated x(i)_k times.
inline std::vector<ColumnSequence> expand_solution(const NFoldInstance& inst, const Solution& sol) {
  require_brick_shape(inst, sol.bricks);
  std::vector<ColumnSequence> out;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    ColumnSequence seq(inst.r());
    for (std::size_t k = 0; k < inst.t(); ++k)
      for (Int c = 0; c < sol.bricks[i][k]; ++c) seq.push_back(inst.block(i).column(k));
    out.push_back(std::move(seq));
  }
  return out;
}

struct ArrangementLimits {
  std::uint64_t max_nodes = 5'000'000;
};

/// Searches per-block orderings so that the interleaving along `sched` keeps
/// every prefix within [slack_lo, slack_hi] of center(j). Returns the
/// interleaved sequence, or nullopt if no ordering exists.
inline std::optional<ColumnSequence> find_bounded_arrangement(const BalancedSchedule& sched,
                                                              const std::vector<ColumnSequence>& per_block,
                                                              const CenterFn& center, Int slack_lo, Int slack_hi,
                                                              ArrangementLimits limits = {}) {
  if (per_block.size() != sched.symbols()) throw PreconditionError("find_bounded_arrangement: block count mismatch");
  for (std::size_t i = 0; i < per_block.size(); ++i)
    if (static_cast<Int>(per_block[i].size()) != sched.counts[i])
      throw PreconditionError("find_bounded_arrangement: block size mismatch");
  const std::size_t dim = per_block.empty() ? 0 : per_block.front().dim();
  std::vector<detail::ColumnMultiset> pools(per_block.size());
  for (std::size_t i = 0; i < per_block.size(); ++i)
    for (const auto& c : per_block[i].columns()) pools[i].add(c);

  const std::size_t q = sched.entries.size();
  std::vector<RationalVector> centers;
  centers.reserve(q);
  for (std::size_t j = 1; j <= q; ++j) centers.push_back(center(static_cast<Int>(j)));

  std::vector<IntVector> chosen;
  IntVector psum(dim, 0);
  std::uint64_t nodes = 0;

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == q) return true;
    if (++nodes > limits.max_nodes) throw SizeLimitError("arrangement search exceeded its node budget");
    auto& pool = pools[sched.entries[depth]];
    for (std::size_t v = 0; v < pool.values.size(); ++v) {
      if (pool.counts[v] == 0) continue;
      IntVector next = psum;
      for (std::size_t k = 0; k < dim; ++k) next[k] = checked::add(next[k], pool.values[v][k]);
      if (!detail::within_slack(next, centers[depth], slack_lo, slack_hi)) continue;
      std::swap(psum, next);
      --pool.counts[v];
      chosen.push_back(pool.values[v]);
      if (extend(depth + 1)) return true;
      chosen.pop_back();
      ++pool.counts[v];
      std::swap(psum, next);
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return ColumnSequence(dim, std::move(chosen));
}

// ---------------------------------------------------------------------------
// Whole-solution audit used by the CLI.

enum class AuditVerdict { Pass, Fail, Skipped };

inline const char* verdict_name(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Pass: return "pass";
    case AuditVerdict::Fail: return "fail";
    case AuditVerdict::Skipped: return "skipped";
  }
  return "?";
}

struct AuditReport {
  /// Every block's columns admit an ordering within 2*delta*r of the proportional share.
  AuditVerdict block_reordering = AuditVerdict::Skipped;
  /// The solver's own path stays inside the windows.
  AuditVerdict path_in_windows = AuditVerdict::Skipped;
  /// Some per-block ordering interleaved along the schedule stays inside the windows.
  AuditVerdict interleaving = AuditVerdict::Skipped;

  bool passed() const {
    return block_reordering != AuditVerdict::Fail && path_in_windows != AuditVerdict::Fail &&
           interleaving != AuditVerdict::Fail;
  }
};

/// Audits a solution of an equality-form instance. `path_columns` may be
/// empty when the solution did not come from the layered solver.
inline AuditReport audit_solution(const NFoldInstance& inst, const Solution& sol,
                                  const std::vector<std::size_t>& path_columns = {},
                                  ArrangementLimits limits = {}) {
  AuditReport report;
  auto per_block = expand_solution(inst, sol);
  const Int bound = checked::mul(2, checked::mul(inst.delta(), static_cast<Int>(inst.r())));

  bool all_small = true;
  bool all_ok = true;
  for (const auto& seq : per_block) {
    if (seq.size() > kMaxReorderingColumns) {
      all_small = false;
      continue;
    }
    if (!exists_bounded_reordering(seq, bound)) all_ok = false;
  }
  report.block_reordering = !all_ok ? AuditVerdict::Fail : all_small ? AuditVerdict::Pass : AuditVerdict::Skipped;

  if (inst.q() == 0) {
    report.path_in_windows = AuditVerdict::Pass;
    report.interleaving = AuditVerdict::Pass;
    return report;
  }

  WindowSlack slack = window_slack(inst);
  CenterFn center = proportional_center(inst.b_top(), inst.q());
  if (!path_columns.empty()) {
    auto sums = path_partial_sums(inst, path_columns);
    bool inside = true;
    for (std::size_t j = 0; j < sums.size(); ++j)
      for (std::size_t k = 0; k < inst.r(); ++k)
        inside = inside && window_bounds(inst, static_cast<Int>(j + 1), k).contains(sums[j][k]);
    report.path_in_windows = inside ? AuditVerdict::Pass : AuditVerdict::Fail;
  }

  BalancedSchedule sched = balance_counts(inst.b_local());
  try {
    auto found = find_bounded_arrangement(sched, per_block, center, -slack.below, slack.above, limits);
    report.interleaving = found ? AuditVerdict::Pass : AuditVerdict::Fail;
  } catch (const SizeLimitError&) {
    report.interleaving = AuditVerdict::Skipped;
  }
  return report;
}

}  // namespace nfold
