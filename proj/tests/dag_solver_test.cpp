#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "nfold/balancer.hpp"
#include "nfold/dag_solver.hpp"
#include "nfold/oracle.hpp"
#include "support/generators.hpp"

namespace nfold {
namespace {

using testing::random_instance;
using testing::toy_instance;

TEST(WindowBounds, FormulaExample) {
  // n = 1, delta = 1, r = 1, q = 4, b_top = 4.
  NFoldInstance inst(1, 2, 1, {IntMatrix::from_rows({{1, 0}})}, {4}, {4}, {{0, 0}});
  Interval w = window_bounds(inst, 2, 0);
  EXPECT_EQ(w.lo, -1);
  EXPECT_EQ(w.hi, 5);
}

TEST(WindowBounds, FirstAndLastLayer) {
  NFoldInstance inst(1, 2, 1, {IntMatrix::from_rows({{1, 0}})}, {4}, {4}, {{0, 0}});
  Interval first = window_bounds(inst, 0, 0);
  EXPECT_TRUE(first.contains(0));
  EXPECT_LE(first.hi - first.lo, 1 * 1 * (1 + 1 + 4));
  Interval last = window_bounds(inst, 4, 0);
  EXPECT_EQ(last.lo, 4 - 3);
  EXPECT_EQ(last.hi, 4 + 3);
}

TEST(WindowBounds, FractionalCentersRoundInward) {
  // q = 3, b_top = 1, slack below = above = 3 for n = 1, delta = 1, r = 1.
  NFoldInstance inst(1, 2, 1, {IntMatrix::from_rows({{1, 0}})}, {1}, {3}, {{0, 0}});
  Interval w = window_bounds(inst, 1, 0);  // center 1/3
  EXPECT_EQ(w.lo, -2);                     // ceil(1/3 - 3)
  EXPECT_EQ(w.hi, 3);                      // floor(1/3 + 3)
}

TEST(WindowBounds, WidthWithinBound) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_instance(rng);
    if (inst.q() == 0 || inst.r() == 0) continue;
    Int n = static_cast<Int>(inst.n()), r = static_cast<Int>(inst.r());
    for (Int j = 0; j <= inst.q(); ++j)
      for (std::size_t k = 0; k < inst.r(); ++k) {
        Interval w = window_bounds(inst, j, k);
        ASSERT_LE(w.hi - w.lo + 1, n * inst.delta() * (n + 1 + 4 * r) + 1);
      }
  }
}

TEST(WindowBounds, PreconditionsAreChecked) {
  EXPECT_THROW(window_bounds(toy_instance(), 3, 0), PreconditionError);
  EXPECT_THROW(window_bounds(toy_instance(), 0, 1), PreconditionError);
  NFoldInstance empty(1, 2, 1, {IntMatrix::from_rows({{1, 0}})}, {0}, {0}, {{0, 0}});
  EXPECT_THROW(window_bounds(empty, 0, 0), PreconditionError);
}

TEST(Solve, ToyInstance) {
  auto sol = solve(toy_instance());
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->bricks, (BrickVector{{1, 1}}));
  EXPECT_EQ(sol->objective, 6);
  // Three candidates exist; the oracle sees the same optimum.
  auto ref = brute_force_solve(toy_instance());
  ASSERT_TRUE(ref);
  EXPECT_EQ(ref->objective, sol->objective);
}

TEST(Solve, ToyInstanceUnreachableTarget) {
  EXPECT_FALSE(solve(toy_instance(3)));
  EXPECT_FALSE(brute_force_solve(toy_instance(3)));
}

TEST(Solve, EmptyMass) {
  NFoldInstance zero(2, 2, 1, {IntMatrix::from_rows({{1, 0}}), IntMatrix::from_rows({{0, 1}})}, {0}, {0, 0},
                     {{1, 1}, {1, 1}});
  auto sol = solve(zero);
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->objective, 0);
  EXPECT_EQ(sol->bricks, zero_bricks(2, 2));

  NFoldInstance off(2, 2, 1, {IntMatrix::from_rows({{1, 0}}), IntMatrix::from_rows({{0, 1}})}, {1}, {0, 0},
                    {{1, 1}, {1, 1}});
  EXPECT_FALSE(solve(off));
}

TEST(SolveWithStats, CountsStayWithinBound) {
  auto out = solve_with_stats(toy_instance());
  EXPECT_LE(out.stats.vertices, 25u);
  EXPECT_EQ(out.stats.layers, 3u);
  EXPECT_LE(out.stats.relaxations, 2u * 1u * out.stats.vertices);
  EXPECT_LE(out.stats.relaxations, static_cast<std::uint64_t>(toy_instance().q()) * 2u * out.stats.window_volume);
}

TEST(SolveWithStats, EmptyMassHasOneVertex) {
  NFoldInstance zero(1, 2, 1, {IntMatrix::from_rows({{1, 0}})}, {0}, {0}, {{1, 1}});
  auto out = solve_with_stats(zero);
  EXPECT_EQ(out.stats.vertices, 1u);
  EXPECT_EQ(out.stats.relaxations, 0u);
  EXPECT_EQ(out.stats.layers, 1u);
}

TEST(Solve, RejectsMixedRelationsAndInvalidInput) {
  NFoldInstance le(1, 2, 1, {IntMatrix::from_rows({{1, 0}})}, {1}, {2}, {{5, 1}}, {Relation::LE}, {Relation::EQ});
  EXPECT_THROW(solve(le), PreconditionError);
  NFoldInstance bad(1, 2, 1, {IntMatrix::from_rows({{1, 0}})}, {1}, {-2}, {{5, 1}});
  EXPECT_THROW(solve(bad), PreconditionError);
}

TEST(Solve, CostOverflowIsReported) {
  const Int big = std::numeric_limits<Int>::max() / 2;
  NFoldInstance inst(1, 1, 0, {IntMatrix(0, 1)}, {}, {3}, {{big}});
  EXPECT_THROW(solve(inst), OverflowError);
}

TEST(Solve, NoTopRows) {
  NFoldInstance inst(2, 3, 0, {IntMatrix(0, 3), IntMatrix(0, 3)}, {}, {2, 1}, {{3, -1, 2}, {0, 4, -2}});
  auto sol = solve(inst);
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->objective, -2 + -2);
}

TEST(Solve, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    auto inst = random_instance(rng);
    auto got = solve(inst);
    auto ref = brute_force_solve(inst);
    ASSERT_EQ(got.has_value(), ref.has_value()) << "trial " << trial;
    if (!got) continue;
    ASSERT_EQ(got->objective, ref->objective) << "trial " << trial;
    ASSERT_TRUE(check_feasible(inst, got->bricks));
    ASSERT_EQ(objective_value(inst, got->bricks), got->objective);
  }
}

TEST(Solve, PathStaysInsideWindows) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    auto inst = random_instance(rng);
    auto out = solve_with_stats(inst);
    if (!out.solution || inst.q() == 0) continue;
    ASSERT_EQ(out.path_columns.size(), static_cast<std::size_t>(inst.q()));
    ASSERT_EQ(out.stats.layers, static_cast<std::uint64_t>(inst.q()) + 1);
    auto sums = path_partial_sums(inst, out.path_columns);
    ASSERT_EQ(sums.size(), static_cast<std::size_t>(inst.q()));
    for (std::size_t j = 0; j < sums.size(); ++j)
      for (std::size_t k = 0; k < inst.r(); ++k)
        ASSERT_TRUE(window_bounds(inst, static_cast<Int>(j + 1), k).contains(sums[j][k]));
    ASSERT_EQ(sums.back(), inst.b_top());

    // Re-expanding the path along the schedule reproduces the bricks.
    auto sched = balance_counts(inst.b_local());
    BrickVector x = zero_bricks(inst.n(), inst.t());
    for (std::size_t j = 0; j < out.path_columns.size(); ++j) ++x[sched.entries[j]][out.path_columns[j]];
    ASSERT_EQ(x, out.solution->bricks);
  }
}

TEST(Solve, PaddingNeverImproves) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_instance(rng);
    auto plain = solve(inst);
    auto wide = solve(inst, SolveOptions{5});
    ASSERT_EQ(plain.has_value(), wide.has_value());
    if (plain) {
      ASSERT_EQ(plain->objective, wide->objective);
    }
  }
}

TEST(Solve, DeterministicWitness) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_instance(rng);
    auto a = solve(inst);
    auto b = solve(inst);
    ASSERT_EQ(a, b);
  }
}

}  // namespace
}  // namespace nfold
