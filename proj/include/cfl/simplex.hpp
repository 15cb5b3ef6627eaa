#ifndef CFL_SIMPLEX_HPP
#define CFL_SIMPLEX_HPP

// Revised primal simplex for   max c^T x  s.t.  A x <= b,  x >= 0,  b >= 0.
//
// The all-slack basis is feasible, so no phase one is needed. The basis
// inverse is held densely and updated in product form; refactorization
// only inverts the block of structural basics against the rows whose
// slack is nonbasic, which stays small for packing problems.
//
// Pricing is Dantzig's rule with ties broken by the lowest variable index.
// After a run of degenerate pivots the solver switches to Bland's rule
// until the objective moves again, which rules out cycling.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cfl/error.hpp"

namespace cfl {

/// Column-compressed sparse matrix, appended one column at a time.
class SparseColumns {
 public:
  explicit SparseColumns(int rows = 0) : rows_(rows) {}

  void add_column(std::span<const int> rows, std::span<const double> values) {
    row_.insert(row_.end(), rows.begin(), rows.end());
    val_.insert(val_.end(), values.begin(), values.end());
    start_.push_back(static_cast<int>(row_.size()));
  }

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(start_.size()) - 1; }
  std::span<const int> col_rows(int j) const {
    return {row_.data() + start_[static_cast<std::size_t>(j)],
            static_cast<std::size_t>(start_[static_cast<std::size_t>(j) + 1] - start_[static_cast<std::size_t>(j)])};
  }
  std::span<const double> col_values(int j) const {
    return {val_.data() + start_[static_cast<std::size_t>(j)],
            static_cast<std::size_t>(start_[static_cast<std::size_t>(j) + 1] - start_[static_cast<std::size_t>(j)])};
  }

 private:
  int rows_;
  std::vector<int> start_{0};
  std::vector<int> row_;
  std::vector<double> val_;
};

struct SimplexOptions {
  double optimality_tol = 1e-10;
  double pivot_tol = 1e-9;
  long max_iterations = 1000000;
  int refactor_interval = 100;
  int degenerate_streak_limit = 50;
};

enum class SimplexStatus { optimal, iteration_limit };

/// Raised when the iteration cap is hit; carries the last feasible point.
class LpIterationLimit : public NumericalError {
 public:
  LpIterationLimit(std::vector<double> incumbent, double objective, long iterations)
      : NumericalError("simplex iteration cap reached after " + std::to_string(iterations) + " pivots"),
        incumbent_(std::move(incumbent)),
        objective_(objective) {}
  const std::vector<double>& incumbent() const { return incumbent_; }
  double objective() const { return objective_; }

 private:
  std::vector<double> incumbent_;
  double objective_;
};

class RevisedSimplex {
 public:
  RevisedSimplex(const SparseColumns& a, std::vector<double> b, SimplexOptions opts = {})
      : a_(a), b_(std::move(b)), opts_(opts), m_(a.rows()), n_(a.cols()) {
    if (static_cast<int>(b_.size()) != m_) throw InputError("rhs size does not match row count");
    for (const double v : b_)
      if (!(v >= 0.0)) throw InputError("simplex needs a non-negative right-hand side");
    const int total = n_ + m_;
    cost_.assign(static_cast<std::size_t>(total), 0.0);
    where_.assign(static_cast<std::size_t>(total), -1);
    barred_.assign(static_cast<std::size_t>(total), 0);
    basis_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      basis_[static_cast<std::size_t>(i)] = n_ + i;
      where_[static_cast<std::size_t>(n_ + i)] = i;
    }
    refactor();
  }

  int rows() const { return m_; }
  int structural() const { return n_; }
  long iterations() const { return iterations_; }

  /// Objective coefficients of the structural variables (slacks cost 0).
  void set_cost(std::span<const double> c) {
    if (static_cast<int>(c.size()) != n_) throw InputError("cost size does not match column count");
    std::fill(cost_.begin(), cost_.end(), 0.0);
    std::copy(c.begin(), c.end(), cost_.begin());
    recompute_duals();
  }

  /// Pivots variable j into the basis regardless of its reduced cost.
  void pivot_in(int j) {
    if (where_[static_cast<std::size_t>(j)] >= 0) return;
    std::vector<double> d = ftran(j);
    const int r = ratio_test(d, false);
    if (r < 0) throw NumericalError("pivot_in: column is unbounded");
    pivot(j, r, d);
  }

  SimplexStatus optimize() {
    for (int round = 0; round < 3; ++round) {
      while (true) {
        if (iterations_ >= opts_.max_iterations) return SimplexStatus::iteration_limit;
        const int q = choose_entering();
        if (q < 0) break;
        std::vector<double> d = ftran(q);
        const int r = ratio_test(d, bland_);
        if (r < 0) throw NumericalError("linear programme is unbounded");
        pivot(q, r, d);
      }
      // Confirm optimality on a fresh factorization.
      refactor();
      if (choose_entering() < 0) return SimplexStatus::optimal;
    }
    return SimplexStatus::optimal;
  }

  /// Fixes every nonbasic variable whose reduced cost is strictly
  /// negative, so later objectives can only move within the optimal face
  /// of the current one.
  void restrict_to_optimal_face() {
    for (int j = 0; j < n_ + m_; ++j)
      if (where_[static_cast<std::size_t>(j)] < 0 && reduced_cost(j) < -opts_.optimality_tol)
        barred_[static_cast<std::size_t>(j)] = 1;
  }

  /// Structural variable values.
  std::vector<double> primal() const {
    std::vector<double> x(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) x[static_cast<std::size_t>(j)] = std::max(0.0, xb_[static_cast<std::size_t>(i)]);
    }
    return x;
  }

  /// Row prices y = c_B B^{-1}; non-negative up to rounding at optimality.
  std::vector<double> duals() const { return y_; }

  double objective() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i)
      s += cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * std::max(0.0, xb_[static_cast<std::size_t>(i)]);
    return s;
  }

 private:
  double& binv(int i, int k) { return binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k)]; }
  double binv(int i, int k) const { return binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k)]; }

  double reduced_cost(int j) const {
    if (j >= n_) return -y_[static_cast<std::size_t>(j - n_)];
    double s = cost_[static_cast<std::size_t>(j)];
    const auto rows = a_.col_rows(j);
    const auto vals = a_.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) s -= y_[static_cast<std::size_t>(rows[k])] * vals[k];
    return s;
  }

  int choose_entering() const {
    int best = -1;
    double best_rc = opts_.optimality_tol;
    for (int j = 0; j < n_ + m_; ++j) {
      if (where_[static_cast<std::size_t>(j)] >= 0 || barred_[static_cast<std::size_t>(j)]) continue;
      const double rc = reduced_cost(j);
      if (bland_) {
        if (rc > opts_.optimality_tol) return j;
      } else if (rc > best_rc) {
        best_rc = rc;
        best = j;
      }
    }
    return best;
  }

  std::vector<double> ftran(int j) const {
    std::vector<double> d(static_cast<std::size_t>(m_), 0.0);
    if (j >= n_) {
      const int r = j - n_;
      for (int i = 0; i < m_; ++i) d[static_cast<std::size_t>(i)] = binv(i, r);
      return d;
    }
    const auto rows = a_.col_rows(j);
    const auto vals = a_.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (int i = 0; i < m_; ++i) d[static_cast<std::size_t>(i)] += binv(i, rows[k]) * vals[k];
    return d;
  }

  /// Leaving row, or -1 when the direction is unbounded.
  int ratio_test(const std::vector<double>& d, bool bland) const {
    double theta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      const double di = d[static_cast<std::size_t>(i)];
      if (di > opts_.pivot_tol) theta = std::min(theta, std::max(0.0, xb_[static_cast<std::size_t>(i)]) / di);
    }
    if (!std::isfinite(theta)) return -1;
    const double slack = 1e-12 * std::max(1.0, theta);
    int best = -1;
    for (int i = 0; i < m_; ++i) {
      const double di = d[static_cast<std::size_t>(i)];
      if (di <= opts_.pivot_tol) continue;
      if (std::max(0.0, xb_[static_cast<std::size_t>(i)]) / di > theta + slack) continue;
      if (best < 0) {
        best = i;
        continue;
      }
      if (bland) {
        if (basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(best)]) best = i;
      } else if (di > d[static_cast<std::size_t>(best)]) {
        best = i;
      }
    }
    return best;
  }

  void pivot(int q, int r, const std::vector<double>& d) {
    const double dr = d[static_cast<std::size_t>(r)];
    const double theta = std::max(0.0, xb_[static_cast<std::size_t>(r)]) / dr;
    const double rc = reduced_cost(q);
    for (int i = 0; i < m_; ++i) {
      xb_[static_cast<std::size_t>(i)] -= theta * d[static_cast<std::size_t>(i)];
      if (std::abs(xb_[static_cast<std::size_t>(i)]) < 1e-13) xb_[static_cast<std::size_t>(i)] = 0.0;
    }
    xb_[static_cast<std::size_t>(r)] = theta;

    double* row_r = &binv(r, 0);
    for (int k = 0; k < m_; ++k) row_r[k] /= dr;
    for (int i = 0; i < m_; ++i) {
      const double di = d[static_cast<std::size_t>(i)];
      if (i == r || di == 0.0) continue;
      double* row_i = &binv(i, 0);
      for (int k = 0; k < m_; ++k) row_i[k] -= di * row_r[k];
    }
    for (int k = 0; k < m_; ++k) y_[static_cast<std::size_t>(k)] += rc * row_r[k];

    const int leaving = basis_[static_cast<std::size_t>(r)];
    where_[static_cast<std::size_t>(leaving)] = -1;
    basis_[static_cast<std::size_t>(r)] = q;
    where_[static_cast<std::size_t>(q)] = r;
    ++iterations_;

    if (theta * rc > 1e-12) {
      degenerate_streak_ = 0;
      bland_ = false;
    } else if (++degenerate_streak_ > opts_.degenerate_streak_limit) {
      bland_ = true;
    }
    if (++since_refactor_ >= opts_.refactor_interval) refactor();
  }

  /// Rebuilds B^{-1} from the current basis, then x_B and y.
  void refactor() {
    since_refactor_ = 0;
    binv_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_), 0.0);
    std::vector<int> struct_pos;  // basis positions holding structural columns
    std::vector<char> slack_basic(static_cast<std::size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) struct_pos.push_back(i);
      else slack_basic[static_cast<std::size_t>(j - n_)] = 1;
    }
    std::vector<int> kernel_rows;
    std::vector<int> kernel_index(static_cast<std::size_t>(m_), -1);
    for (int i = 0; i < m_; ++i)
      if (!slack_basic[static_cast<std::size_t>(i)]) {
        kernel_index[static_cast<std::size_t>(i)] = static_cast<int>(kernel_rows.size());
        kernel_rows.push_back(i);
      }
    const int k = static_cast<int>(struct_pos.size());
    if (static_cast<int>(kernel_rows.size()) != k) throw NumericalError("inconsistent basis");

    Eigen::MatrixXd kinv;
    if (k > 0) {
      Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(k, k);
      for (int c = 0; c < k; ++c) {
        const int j = basis_[static_cast<std::size_t>(struct_pos[static_cast<std::size_t>(c)])];
        const auto rows = a_.col_rows(j);
        const auto vals = a_.col_values(j);
        for (std::size_t e = 0; e < rows.size(); ++e) {
          const int ki = kernel_index[static_cast<std::size_t>(rows[e])];
          if (ki >= 0) kernel(ki, c) = vals[e];
        }
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(kernel);
      const double det = std::abs(lu.determinant());
      if (!(det > 0.0) || !std::isfinite(det)) throw NumericalError("singular basis during refactorization");
      kinv = lu.inverse();
    }
    // Structural rows of B^{-1}.
    for (int c = 0; c < k; ++c) {
      const int pos = struct_pos[static_cast<std::size_t>(c)];
      for (int l = 0; l < k; ++l) binv(pos, kernel_rows[static_cast<std::size_t>(l)]) = kinv(c, l);
    }
    // Slack rows: e_i minus the coupling through the structural block.
    for (int i = 0; i < m_; ++i)
      if (slack_basic[static_cast<std::size_t>(i)]) binv(where_[static_cast<std::size_t>(n_ + i)], i) = 1.0;
    for (int c = 0; c < k; ++c) {
      const int j = basis_[static_cast<std::size_t>(struct_pos[static_cast<std::size_t>(c)])];
      const auto rows = a_.col_rows(j);
      const auto vals = a_.col_values(j);
      for (std::size_t e = 0; e < rows.size(); ++e) {
        const int i = rows[e];
        if (!slack_basic[static_cast<std::size_t>(i)]) continue;
        const int pos = where_[static_cast<std::size_t>(n_ + i)];
        for (int l = 0; l < k; ++l) binv(pos, kernel_rows[static_cast<std::size_t>(l)]) -= vals[e] * kinv(c, l);
      }
    }
    xb_.assign(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      double s = 0.0;
      const double* row = &binv(i, 0);
      for (int l = 0; l < m_; ++l) s += row[l] * b_[static_cast<std::size_t>(l)];
      xb_[static_cast<std::size_t>(i)] = std::abs(s) < 1e-13 ? 0.0 : s;
    }
    recompute_duals();
  }

  void recompute_duals() {
    y_.assign(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const double c = cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (c == 0.0) continue;
      const double* row = &binv(i, 0);
      for (int l = 0; l < m_; ++l) y_[static_cast<std::size_t>(l)] += c * row[l];
    }
  }

  const SparseColumns& a_;
  std::vector<double> b_;
  SimplexOptions opts_;
  int m_;
  int n_;
  std::vector<double> cost_;
  std::vector<int> basis_;
  std::vector<int> where_;
  std::vector<char> barred_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::vector<double> y_;
  long iterations_ = 0;
  int since_refactor_ = 0;
  int degenerate_streak_ = 0;
  bool bland_ = false;
};

}  // namespace cfl

#endif  // CFL_SIMPLEX_HPP
