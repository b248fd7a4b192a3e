#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "arith.hpp"
#include "balancer.hpp"
#include "core.hpp"

namespace nfold {

struct Interval {
  Int lo;
  Int hi;

  bool empty() const { return lo > hi; }
  bool contains(Int v) const { return lo <= v && v <= hi; }
  Int size() const { return empty() ? 0 : hi - lo + 1; }
};

/// Distance a partial sum may fall below / rise above its proportional share
/// (j/q) b_top[k]: n*delta*(n+2r) below and n*delta*(1+2r) above.
struct WindowSlack {
  Int below;
  Int above;
};

inline WindowSlack window_slack(const NFoldInstance& inst) {
  using namespace checked;
  Int n = static_cast<Int>(inst.n());
  Int r = static_cast<Int>(inst.r());
  Int n_delta = mul(n, inst.delta());
  return {mul(n_delta, add(n, mul(2, r))), mul(n_delta, add(1, mul(2, r)))};
}

/// Integer interval of admissible values for coordinate `coord` of a partial
/// sum after `layer` columns:
///   ceil((j/q) b_top[k] - below) <= v <= floor((j/q) b_top[k] + above),
/// evaluated exactly over the common denominator q. `padding` widens both
/// ends; the solver uses 0.
inline Interval window_bounds(const NFoldInstance& inst, Int layer, std::size_t coord, Int padding = 0) {
  using namespace checked;
  const Int q = inst.q();
  if (q <= 0) throw PreconditionError("window_bounds requires q >= 1");
  if (layer < 0 || layer > q) throw PreconditionError("window_bounds: layer out of range");
  if (coord >= inst.r()) throw PreconditionError("window_bounds: coordinate out of range");
  WindowSlack slack = window_slack(inst);
  Int center = mul(layer, inst.b_top()[coord]);
  Int lo = ceil_div(sub(center, mul(q, slack.below)), q);
  Int hi = floor_div(add(center, mul(q, slack.above)), q);
  return {sub(lo, padding), add(hi, padding)};
}

struct SolveOptions {
  /// Extra slack added to every window on both sides (0 = exact windows).
  Int window_padding = 0;
};

struct SolveStats {
  std::uint64_t vertices = 0;      // reachable vertices materialized, including the source
  std::uint64_t relaxations = 0;   // arcs relaxed (head inside the next window)
  std::uint64_t layers = 0;        // layers processed, q + 1
  std::uint64_t window_volume = 0; // sum over layers 1..q of the window box size
  double wall_seconds = 0.0;
};

struct SolveOutcome {
  std::optional<Solution> solution;
  /// Column index taken at each layer 1..q along the optimal path (empty when infeasible).
  std::vector<std::size_t> path_columns;
  SolveStats stats;
};

namespace detail {

// Open-addressing map from a window-box offset to a vertex index in its layer.
class OffsetIndex {
 public:
  static constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();

  void clear(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    keys_.assign(cap, kEmpty);
    vals_.assign(cap, 0);
    mask_ = cap - 1;
    size_ = 0;
  }

  /// Returns the slot value for `key`, inserting `fresh` if absent.
  std::pair<std::uint32_t, bool> find_or_insert(std::uint64_t key, std::uint32_t fresh) {
    if ((size_ + 1) * 2 > keys_.size()) grow();
    std::size_t slot = hash(key) & mask_;
    while (keys_[slot] != kEmpty) {
      if (keys_[slot] == key) return {vals_[slot], false};
      slot = (slot + 1) & mask_;
    }
    keys_[slot] = key;
    vals_[slot] = fresh;
    ++size_;
    return {fresh, true};
  }

  std::optional<std::uint32_t> find(std::uint64_t key) const {
    if (keys_.empty()) return std::nullopt;
    std::size_t slot = hash(key) & mask_;
    while (keys_[slot] != kEmpty) {
      if (keys_[slot] == key) return vals_[slot];
      slot = (slot + 1) & mask_;
    }
    return std::nullopt;
  }

 private:
  static std::size_t hash(std::uint64_t key) {
    key ^= key >> 33;
    key *= 0xff51afd7ed558ccdULL;
    key ^= key >> 33;
    return static_cast<std::size_t>(key);
  }

  void grow() {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<std::uint32_t> old_vals = std::move(vals_);
    keys_.assign(old_keys.size() * 2, kEmpty);
    vals_.assign(old_keys.size() * 2, 0);
    mask_ = keys_.size() - 1;
    for (std::size_t s = 0; s < old_keys.size(); ++s) {
      if (old_keys[s] == kEmpty) continue;
      std::size_t slot = hash(old_keys[s]) & mask_;
      while (keys_[slot] != kEmpty) slot = (slot + 1) & mask_;
      keys_[slot] = old_keys[s];
      vals_[slot] = old_vals[s];
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> vals_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

// Window box of one layer with a mixed-radix offset encoding.
struct LayerBox {
  std::vector<Interval> bounds;
  std::vector<std::uint64_t> stride;
  std::uint64_t volume = 1;

  bool contains(const Int* v) const {
    for (std::size_t k = 0; k < bounds.size(); ++k)
      if (!bounds[k].contains(v[k])) return false;
    return true;
  }

  std::uint64_t offset(const Int* v) const {
    std::uint64_t off = 0;
    for (std::size_t k = 0; k < bounds.size(); ++k)
      off += static_cast<std::uint64_t>(v[k] - bounds[k].lo) * stride[k];
    return off;
  }
};

inline LayerBox make_box(const NFoldInstance& inst, Int layer, Int padding) {
  LayerBox box;
  box.bounds.reserve(inst.r());
  for (std::size_t k = 0; k < inst.r(); ++k) {
    box.bounds.push_back(window_bounds(inst, layer, k, padding));
    std::uint64_t size = static_cast<std::uint64_t>(box.bounds.back().size());
    box.stride.push_back(box.volume);
    if (size != 0 && box.volume > (std::numeric_limits<std::uint64_t>::max() / 4) / size)
      throw SizeLimitError("window box exceeds the 64-bit offset range");
    box.volume *= size;
  }
  return box;
}

struct Predecessor {
  std::uint32_t prev;
  std::uint32_t column;
};

}  // namespace detail

/// Optimal solution of an equality-form program by a shortest-path sweep over
/// the layered partial-sum graph. Layer j holds the partial sums after the
/// first j columns of the balanced block schedule that fall inside the layer-j
/// window; an arc from layer j-1 to j adds one column of the block scheduled
/// at position j and costs that column's objective coefficient. Only vertices
/// reachable from the zero vector at layer 0 are ever stored.
inline SolveOutcome solve_with_stats(const NFoldInstance& inst, const SolveOptions& options = {}) {
  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  require_valid(inst);
  if (!inst.is_equality_form())
    throw PreconditionError("solve requires an equality-form instance; use solve_general for mixed relations");

  SolveOutcome out;
  const std::size_t r = inst.r();
  const std::size_t t = inst.t();
  const Int q = inst.q();
  BalancedSchedule sched = balance_counts(inst.b_local());

  auto finish = [&]() {
    out.stats.wall_seconds = std::chrono::duration<double>(clock::now() - started).count();
    return out;
  };

  out.stats.vertices = 1;
  out.stats.layers = 1;
  if (q == 0) {
    bool zero_rhs = std::all_of(inst.b_top().begin(), inst.b_top().end(), [](Int b) { return b == 0; });
    if (zero_rhs) out.solution = Solution{zero_bricks(inst.n(), t), 0};
    return finish();
  }

  // Rolling coordinate/cost tables for the previous and current layer plus a
  // predecessor log for every layer.
  std::vector<Int> prev_coords(r, 0);
  std::vector<Int> prev_cost{0};
  std::vector<Int> cur_coords;
  std::vector<Int> cur_cost;
  std::vector<std::vector<detail::Predecessor>> preds(static_cast<std::size_t>(q) + 1);
  detail::OffsetIndex index;
  detail::LayerBox box;
  std::vector<Int> head(r);

  for (Int j = 1; j <= q; ++j) {
    const std::size_t block_id = sched.entries[static_cast<std::size_t>(j - 1)];
    const IntMatrix& block = inst.block(block_id);
    const IntVector& brick_cost = inst.cost()[block_id];
    box = detail::make_box(inst, j, options.window_padding);
    out.stats.window_volume += box.volume;
    out.stats.layers += 1;

    const std::size_t prev_count = prev_cost.size();
    cur_coords.clear();
    cur_cost.clear();
    auto& layer_preds = preds[static_cast<std::size_t>(j)];
    index.clear(static_cast<std::size_t>(std::min<std::uint64_t>(prev_count * t, box.volume)));

    for (std::size_t p = 0; p < prev_count; ++p) {
      const Int* src = prev_coords.data() + p * r;
      for (std::size_t col = 0; col < t; ++col) {
        for (std::size_t k = 0; k < r; ++k) head[k] = checked::add(src[k], block(k, col));
        if (!box.contains(head.data())) continue;
        ++out.stats.relaxations;
        const Int candidate = checked::add(prev_cost[p], brick_cost[col]);
        auto fresh = static_cast<std::uint32_t>(cur_cost.size());
        auto [slot, inserted] = index.find_or_insert(box.offset(head.data()), fresh);
        if (inserted) {
          cur_coords.insert(cur_coords.end(), head.begin(), head.end());
          cur_cost.push_back(candidate);
          layer_preds.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(col)});
        } else if (candidate < cur_cost[slot]) {
          cur_cost[slot] = candidate;
          layer_preds[slot] = {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(col)};
        }
      }
    }
    out.stats.vertices += cur_cost.size();
    std::swap(prev_coords, cur_coords);
    std::swap(prev_cost, cur_cost);
  }

  // prev_* now holds layer q; `index` and `box` still describe it.
  if (!box.contains(inst.b_top().data())) return finish();
  auto target = index.find(box.offset(inst.b_top().data()));
  if (!target) return finish();

  Solution sol{zero_bricks(inst.n(), t), prev_cost[*target]};
  out.path_columns.assign(static_cast<std::size_t>(q), 0);
  std::uint32_t at = *target;
  for (Int j = q; j >= 1; --j) {
    const auto& step = preds[static_cast<std::size_t>(j)][at];
    sol.bricks[sched.entries[static_cast<std::size_t>(j - 1)]][step.column] += 1;
    out.path_columns[static_cast<std::size_t>(j - 1)] = step.column;
    at = step.prev;
  }
  out.solution = std::move(sol);
  return finish();
}

inline std::optional<Solution> solve(const NFoldInstance& inst, const SolveOptions& options = {}) {
  return solve_with_stats(inst, options).solution;
}

/// Partial sums after each position of the block schedule when position j
/// takes column path_columns[j-1] of the block scheduled there.
inline std::vector<IntVector> path_partial_sums(const NFoldInstance& inst, const std::vector<std::size_t>& path_columns) {
  BalancedSchedule sched = balance_counts(inst.b_local());
  if (path_columns.size() != sched.entries.size()) throw PreconditionError("path length differs from q");
  std::vector<IntVector> sums;
  IntVector acc(inst.r(), 0);
  for (std::size_t j = 0; j < path_columns.size(); ++j) {
    const IntMatrix& block = inst.block(sched.entries[j]);
    for (std::size_t k = 0; k < inst.r(); ++k) acc[k] = checked::add(acc[k], block(k, path_columns[j]));
    sums.push_back(acc);
  }
  return sums;
}

}  // namespace nfold
