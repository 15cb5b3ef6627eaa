#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include "cfl/rng.hpp"
#include "cfl/simplex.hpp"

using namespace cfl;

namespace {

SparseColumns dense_columns(const std::vector<std::vector<double>>& rows_by_col, int m) {
  SparseColumns a(m);
  for (const auto& col : rows_by_col) {
    std::vector<int> idx;
    std::vector<double> val;
    for (int i = 0; i < m; ++i)
      if (col[static_cast<std::size_t>(i)] != 0.0) {
        idx.push_back(i);
        val.push_back(col[static_cast<std::size_t>(i)]);
      }
    a.add_column(idx, val);
  }
  return a;
}

}  // namespace

TEST(Simplex, TwoByTwo) {
  // max x + y  s.t.  2x + y <= 4,  x + 3y <= 6.
  const auto a = dense_columns({{2, 1}, {1, 3}}, 2);
  RevisedSimplex s(a, {4, 6});
  s.set_cost(std::vector<double>{1, 1});
  ASSERT_EQ(s.optimize(), SimplexStatus::optimal);
  EXPECT_NEAR(s.objective(), 14.0 / 5.0, 1e-12);
  const auto x = s.primal();
  EXPECT_NEAR(x[0], 6.0 / 5.0, 1e-12);
  EXPECT_NEAR(x[1], 8.0 / 5.0, 1e-12);
  const auto y = s.duals();
  EXPECT_NEAR(y[0], 2.0 / 5.0, 1e-12);
  EXPECT_NEAR(y[1], 1.0 / 5.0, 1e-12);
}

TEST(Simplex, BealeCyclingExampleTerminates) {
  const auto a = dense_columns({{0.25, 0.5, 0}, {-60, -90, 0}, {-1.0 / 25, -1.0 / 50, 1}, {9, 3, 0}}, 3);
  SimplexOptions opts;
  opts.degenerate_streak_limit = 1;
  RevisedSimplex s(a, {0, 0, 1}, opts);
  s.set_cost(std::vector<double>{0.75, -150, 1.0 / 50, -6});
  ASSERT_EQ(s.optimize(), SimplexStatus::optimal);
  EXPECT_NEAR(s.objective(), 1.0 / 20.0, 1e-12);
  EXPECT_LT(s.iterations(), 50);
}

TEST(Simplex, IterationCapIsReported) {
  const auto a = dense_columns({{2, 1}, {1, 3}}, 2);
  SimplexOptions opts;
  opts.max_iterations = 1;
  RevisedSimplex s(a, {4, 6}, opts);
  s.set_cost(std::vector<double>{1, 1});
  EXPECT_EQ(s.optimize(), SimplexStatus::iteration_limit);
  const LpIterationLimit err(s.primal(), s.objective(), s.iterations());
  EXPECT_EQ(err.incumbent().size(), 2u);
  EXPECT_GT(err.objective(), 0.0);
}

TEST(Simplex, Errors) {
  const auto a = dense_columns({{1, 1}}, 2);
  EXPECT_THROW(RevisedSimplex(a, {1.0}), InputError);
  EXPECT_THROW(RevisedSimplex(a, {1.0, -1.0}), InputError);
  RevisedSimplex s(a, {1.0, 1.0});
  EXPECT_THROW(s.set_cost(std::vector<double>{1, 1}), InputError);
  // max x with x unconstrained from above.
  SparseColumns free_col(1);
  free_col.add_column(std::vector<int>{0}, std::vector<double>{-1.0});
  RevisedSimplex u(free_col, {1.0});
  u.set_cost(std::vector<double>{1.0});
  EXPECT_THROW(u.optimize(), NumericalError);
}

TEST(Simplex, SecondObjectiveStaysOnOptimalFace) {
  // max x + y  s.t.  x + y <= 1,  y <= 1,  then max y on that face.
  const auto a = dense_columns({{1, 0}, {1, 1}}, 2);
  RevisedSimplex s(a, {1, 1});
  s.set_cost(std::vector<double>{1, 1});
  ASSERT_EQ(s.optimize(), SimplexStatus::optimal);
  EXPECT_NEAR(s.objective(), 1.0, 1e-12);
  s.restrict_to_optimal_face();
  s.set_cost(std::vector<double>{0, 1});
  ASSERT_EQ(s.optimize(), SimplexStatus::optimal);
  const auto x = s.primal();
  EXPECT_NEAR(x[0] + x[1], 1.0, 1e-12);
  EXPECT_NEAR(x[1], 1.0, 1e-12);

  // After max x, y has reduced cost -1 and is barred, so max y stays at 0.
  RevisedSimplex t(a, {1, 1});
  t.set_cost(std::vector<double>{1, 0});
  ASSERT_EQ(t.optimize(), SimplexStatus::optimal);
  t.restrict_to_optimal_face();
  t.set_cost(std::vector<double>{0, 1});
  ASSERT_EQ(t.optimize(), SimplexStatus::optimal);
  EXPECT_NEAR(t.primal()[0], 1.0, 1e-12);
  EXPECT_NEAR(t.primal()[1], 0.0, 1e-12);
}

TEST(Simplex, PivotInForcesBasis) {
  const auto a = dense_columns({{2, 1}, {1, 3}}, 2);
  RevisedSimplex s(a, {4, 6});
  s.set_cost(std::vector<double>{1, 1});
  s.pivot_in(1);
  EXPECT_NEAR(s.primal()[1], 2.0, 1e-12);
  ASSERT_EQ(s.optimize(), SimplexStatus::optimal);
  EXPECT_NEAR(s.objective(), 14.0 / 5.0, 1e-12);
}

TEST(Simplex, StrongDualityOnRandomPackings) {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = static_cast<int>(rng.between(2, 25));
    const int n = static_cast<int>(rng.between(1, 40));
    std::vector<std::vector<double>> cols(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (auto& col : cols) {
      for (auto& v : col)
        if (rng.uniform() < 0.4) v = std::floor(rng.uniform() * 4.0);
      col[static_cast<std::size_t>(rng.between(0, m - 1))] += 1.0;
    }
    std::vector<double> b(static_cast<std::size_t>(m)), c(static_cast<std::size_t>(n));
    for (auto& v : b) v = std::floor(rng.uniform() * 5.0);
    for (auto& v : c) v = rng.uniform() * 3.0 - 0.5;
    const auto a = dense_columns(cols, m);
    RevisedSimplex s(a, b);
    s.set_cost(c);
    ASSERT_EQ(s.optimize(), SimplexStatus::optimal);
    const auto x = s.primal();
    const auto y = s.duals();
    double primal_obj = 0.0, dual_obj = 0.0;
    for (int j = 0; j < n; ++j) primal_obj += c[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
      EXPECT_LE(row, b[static_cast<std::size_t>(i)] + 1e-9);
      EXPECT_GE(y[static_cast<std::size_t>(i)], -1e-9);
      dual_obj += b[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < n; ++j) {
      EXPECT_GE(x[static_cast<std::size_t>(j)], 0.0);
      double col = 0.0;
      for (int i = 0; i < m; ++i) col += cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
      EXPECT_GE(col, c[static_cast<std::size_t>(j)] - 1e-9);
    }
    EXPECT_NEAR(primal_obj, dual_obj, 1e-9);
    EXPECT_NEAR(primal_obj, s.objective(), 1e-9);
  }
}
