#pragma once

#include <random>
#include <vector>

#include "nfold/core.hpp"

namespace nfold::testing {

struct InstanceRanges {
  std::size_t max_n = 3;
  std::size_t max_t = 3;
  std::size_t max_r = 2;
  Int max_delta = 2;
  Int max_b = 4;
  Int max_cost = 5;
  bool mixed_relations = false;
};

inline Int uniform(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

/// Random instance in the given ranges. Half of the time the top right-hand
/// side is the activity of a random brick assignment so that feasible
/// instances are common; otherwise it is drawn uniformly.
inline NFoldInstance random_instance(std::mt19937_64& rng, const InstanceRanges& ranges = {}) {
  const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(ranges.max_n)));
  const auto t = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(ranges.max_t)));
  const auto r = static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(ranges.max_r)));
  const Int delta = uniform(rng, 0, ranges.max_delta);

  std::vector<IntMatrix> blocks;
  IntVector b_local;
  std::vector<IntVector> cost;
  std::vector<Relation> local_rel;
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix block(r, t);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < t; ++j) block(k, j) = uniform(rng, -delta, delta);
    blocks.push_back(std::move(block));
    b_local.push_back(uniform(rng, 0, ranges.max_b));
    IntVector c(t);
    for (auto& v : c) v = uniform(rng, -ranges.max_cost, ranges.max_cost);
    cost.push_back(std::move(c));
    local_rel.push_back(ranges.mixed_relations && uniform(rng, 0, 1) ? Relation::LE : Relation::EQ);
  }

  IntVector b_top(r, 0);
  if (uniform(rng, 0, 1) == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      Int mass = local_rel[i] == Relation::EQ ? b_local[i] : uniform(rng, 0, b_local[i]);
      for (Int u = 0; u < mass; ++u) {
        auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(t) - 1));
        for (std::size_t k = 0; k < r; ++k) b_top[k] += blocks[i](k, j);
      }
    }
  } else {
    Int span = std::max<Int>(1, delta * 6);
    for (auto& b : b_top) b = uniform(rng, -span, span);
  }

  std::vector<Relation> global_rel(r, Relation::EQ);
  if (ranges.mixed_relations)
    for (auto& rel : global_rel) rel = static_cast<Relation>(uniform(rng, 0, 2));
  return NFoldInstance(n, t, r, std::move(blocks), std::move(b_top), std::move(b_local), std::move(cost), std::move(global_rel),
                       std::move(local_rel));
}

/// The 1-block example used across the suites: T = (1 0), b_top = (1),
/// b_local = 2, c = (5, 1).
inline NFoldInstance toy_instance(Int b_top = 1) {
  return NFoldInstance(1, 2, 1, {IntMatrix::from_rows({{1, 0}})}, {b_top}, {2}, {{5, 1}});
}

}  // namespace nfold::testing
