#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace nfold {

using IntVector = std::vector<Int>;

/// Relation symbol of one constraint row.
enum class Relation { LE, EQ, GE };

inline const char* relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::LE: return "<=";
    case Relation::EQ: return "=";
    case Relation::GE: return ">=";
  }
  return "?";
}

inline bool satisfies(Int lhs, Relation rel, Int rhs) {
  switch (rel) {
    case Relation::LE: return lhs <= rhs;
    case Relation::EQ: return lhs == rhs;
    case Relation::GE: return lhs >= rhs;
  }
  return false;
}

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows; every row must have the same length.
  static IntMatrix from_rows(const std::vector<IntVector>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw PreconditionError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int operator()(std::size_t row, std::size_t col) const { return data_[row * cols_ + col]; }
  Int& operator()(std::size_t row, std::size_t col) { return data_[row * cols_ + col]; }

  IntVector column(std::size_t col) const {
    IntVector out(rows_);
    for (std::size_t k = 0; k < rows_; ++k) out[k] = (*this)(k, col);
    return out;
  }

  Int max_abs() const {
    Int best = 0;
    for (Int v : data_) best = std::max(best, checked::abs(v));
    return best;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector data_;
};

/// A combinatorial n-fold program
///
///   min c^T x  s.t.  sum_i T(i) x(i)  <>  b_top,   1^T x(i)  <>  b_local[i],   x >= 0 integer.
///
/// The all-ones diagonal block is implicit. Relations default to EQ, which
/// makes the instance an equality program; LE/EQ/GE on the top rows and LE/EQ
/// on the local rows give the mixed form handled by the reduction module.
///
/// The instance is immutable. Shape problems are not rejected here; call
/// validate_instance() before handing an instance to a solver.
class NFoldInstance {
 public:
  NFoldInstance(std::size_t n, std::size_t t, std::size_t r, std::vector<IntMatrix> blocks, IntVector b_top,
                IntVector b_local, std::vector<IntVector> cost, std::vector<Relation> global_relations = {},
                std::vector<Relation> local_relations = {})
      : n_(n),
        t_(t),
        r_(r),
        blocks_(std::move(blocks)),
        b_top_(std::move(b_top)),
        b_local_(std::move(b_local)),
        cost_(std::move(cost)),
        global_relations_(std::move(global_relations)),
        local_relations_(std::move(local_relations)) {
    if (global_relations_.empty()) global_relations_.assign(b_top_.size(), Relation::EQ);
    if (local_relations_.empty()) local_relations_.assign(b_local_.size(), Relation::EQ);
    for (const auto& block : blocks_) delta_ = std::max(delta_, block.max_abs());
    for (Int b : b_local_) q_ = checked::add(q_, b);
  }

  std::size_t n() const { return n_; }
  std::size_t t() const { return t_; }
  std::size_t r() const { return r_; }

  const std::vector<IntMatrix>& blocks() const { return blocks_; }
  const IntMatrix& block(std::size_t i) const { return blocks_[i]; }
  const IntVector& b_top() const { return b_top_; }
  const IntVector& b_local() const { return b_local_; }
  const std::vector<IntVector>& cost() const { return cost_; }
  const std::vector<Relation>& global_relations() const { return global_relations_; }
  const std::vector<Relation>& local_relations() const { return local_relations_; }

  /// Largest absolute entry over all top blocks.
  Int delta() const { return delta_; }
  /// Sum of the local right-hand sides.
  Int q() const { return q_; }

  /// Largest absolute cost coefficient.
  Int cost_norm() const {
    Int best = 0;
    for (const auto& brick : cost_)
      for (Int c : brick) best = std::max(best, checked::abs(c));
    return best;
  }

  /// True when every relation is EQ.
  bool is_equality_form() const {
    auto eq = [](Relation rel) { return rel == Relation::EQ; };
    return std::all_of(global_relations_.begin(), global_relations_.end(), eq) &&
           std::all_of(local_relations_.begin(), local_relations_.end(), eq);
  }

 private:
  std::size_t n_;
  std::size_t t_;
  std::size_t r_;
  std::vector<IntMatrix> blocks_;
  IntVector b_top_;
  IntVector b_local_;
  std::vector<IntVector> cost_;
  std::vector<Relation> global_relations_;
  std::vector<Relation> local_relations_;
  Int delta_ = 0;
  Int q_ = 0;
};

/// n bricks of length t.
using BrickVector = std::vector<IntVector>;

struct Solution {
  BrickVector bricks;
  Int objective = 0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { DimensionMismatch, LocallyInfeasible, RelationNotAllowed };

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  bool has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
  }

  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.message;
    }
    return out;
  }
};

inline ValidationReport validate_instance(const NFoldInstance& inst) {
  ValidationReport report;
  auto mismatch = [&report](std::string msg) {
    report.violations.push_back({ViolationKind::DimensionMismatch, "dimension mismatch: " + std::move(msg)});
  };

  if (inst.n() == 0) mismatch("n must be positive");
  if (inst.t() == 0) mismatch("t must be positive");
  if (inst.blocks().size() != inst.n())
    mismatch("expected " + std::to_string(inst.n()) + " blocks, got " + std::to_string(inst.blocks().size()));
  for (std::size_t i = 0; i < inst.blocks().size(); ++i) {
    const auto& block = inst.block(i);
    if (block.rows() != inst.r() || block.cols() != inst.t())
      mismatch("block " + std::to_string(i + 1) + " is " + std::to_string(block.rows()) + "x" +
               std::to_string(block.cols()) + ", expected " + std::to_string(inst.r()) + "x" +
               std::to_string(inst.t()));
  }
  if (inst.b_top().size() != inst.r()) mismatch("b_top has length " + std::to_string(inst.b_top().size()));
  if (inst.b_local().size() != inst.n()) mismatch("b_local has length " + std::to_string(inst.b_local().size()));
  if (inst.cost().size() != inst.n()) mismatch("cost has " + std::to_string(inst.cost().size()) + " bricks");
  for (std::size_t i = 0; i < inst.cost().size(); ++i)
    if (inst.cost()[i].size() != inst.t()) mismatch("cost brick " + std::to_string(i + 1) + " has wrong length");
  if (inst.global_relations().size() != inst.b_top().size()) mismatch("global_relations length");
  if (inst.local_relations().size() != inst.b_local().size()) mismatch("local_relations length");

  for (std::size_t i = 0; i < inst.local_relations().size(); ++i) {
    if (inst.local_relations()[i] == Relation::GE)
      report.violations.push_back(
          {ViolationKind::RelationNotAllowed, "local row " + std::to_string(i + 1) + " uses '>=', which is unsupported"});
  }
  for (std::size_t i = 0; i < inst.b_local().size(); ++i) {
    // Non-negative variables cannot sum to a negative value under either LE or EQ.
    if (inst.b_local()[i] < 0)
      report.violations.push_back({ViolationKind::LocallyInfeasible,
                                   "locally infeasible: b_local[" + std::to_string(i + 1) + "] is negative"});
  }
  return report;
}

inline void require_valid(const NFoldInstance& inst) {
  auto report = validate_instance(inst);
  if (!report.ok()) throw PreconditionError("invalid instance: " + report.summary());
}

// ---------------------------------------------------------------------------
// Evaluation

inline void require_brick_shape(const NFoldInstance& inst, const BrickVector& x) {
  if (x.size() != inst.n()) throw PreconditionError("dimension mismatch: expected " + std::to_string(inst.n()) + " bricks");
  for (const auto& brick : x)
    if (brick.size() != inst.t()) throw PreconditionError("dimension mismatch: brick length differs from t");
}

inline Int objective_value(const NFoldInstance& inst, const BrickVector& x) {
  require_brick_shape(inst, x);
  Int total = 0;
  for (std::size_t i = 0; i < inst.n(); ++i)
    for (std::size_t j = 0; j < inst.t(); ++j) total = checked::add(total, checked::mul(inst.cost()[i][j], x[i][j]));
  return total;
}

/// Left-hand side of the top rows: sum_i T(i) x(i).
inline IntVector top_row_activity(const NFoldInstance& inst, const BrickVector& x) {
  require_brick_shape(inst, x);
  IntVector acc(inst.r(), 0);
  for (std::size_t i = 0; i < inst.n(); ++i)
    for (std::size_t j = 0; j < inst.t(); ++j) {
      if (x[i][j] == 0) continue;
      for (std::size_t k = 0; k < inst.r(); ++k)
        acc[k] = checked::add(acc[k], checked::mul(inst.block(i)(k, j), x[i][j]));
    }
  return acc;
}

inline bool check_feasible(const NFoldInstance& inst, const BrickVector& x) {
  require_brick_shape(inst, x);
  for (std::size_t i = 0; i < inst.n(); ++i) {
    Int sum = 0;
    for (Int v : x[i]) {
      if (v < 0) return false;
      sum = checked::add(sum, v);
    }
    if (!satisfies(sum, inst.local_relations()[i], inst.b_local()[i])) return false;
  }
  IntVector acc = top_row_activity(inst, x);
  for (std::size_t k = 0; k < inst.r(); ++k)
    if (!satisfies(acc[k], inst.global_relations()[k], inst.b_top()[k])) return false;
  return true;
}

inline BrickVector zero_bricks(std::size_t n, std::size_t t) { return BrickVector(n, IntVector(t, 0)); }

}  // namespace nfold
