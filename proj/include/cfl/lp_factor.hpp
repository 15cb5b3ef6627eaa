#ifndef CFL_LP_FACTOR_HPP
#define CFL_LP_FACTOR_HPP

// Fractional K_t-matchings of weighted graphs.
//
//   primal:  max sum_T f(T)
//            sum_{T ∋ v} f(T) <= 1             for every vertex v
//            sum_{T ⊇ uv} f(T) <= w(uv)         for every edge uv
//            f >= 0
//
//   dual:    min sum_v g(v) + sum_uv h(uv) w(uv)
//            sum_{v ∈ T} g(v) + sum_{uv ∈ E(T)} h(uv) >= 1   for every T
//            g, h >= 0
//
// Both are solved by one simplex run: the primal is handed to the solver
// and the dual is read off the optimal basis. Edge rows with w(uv) >= 1
// are implied by the two vertex rows and are left out of the programme;
// their dual price is zero.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cfl/cliques.hpp"
#include "cfl/error.hpp"
#include "cfl/graph.hpp"
#include "cfl/rng.hpp"
#include "cfl/simplex.hpp"

namespace cfl {

inline constexpr double kDefaultLpTol = 1e-7;
/// A dual price counts as positive above this multiple of the tolerance.
inline constexpr double kActiveDualFactor = 10.0;

struct PrimalSolution {
  std::vector<double> f;  // indexed by clique id
  double objective = 0.0;
};

struct DualSolution {
  std::vector<double> g;  // indexed by vertex
  std::vector<double> h;  // indexed by edge id
  double objective = 0.0;
};

struct LpSolution {
  PrimalSolution primal;
  DualSolution dual;
  long iterations = 0;
  int rows = 0;
};

inline std::vector<double> vertex_loads(const CliqueSet& cliques, int n, std::span<const double> f) {
  std::vector<double> load(static_cast<std::size_t>(n), 0.0);
  for (CliqueId id = 0; id < cliques.size(); ++id) {
    const double x = f[static_cast<std::size_t>(id)];
    if (x == 0.0) continue;
    for (const Vertex v : cliques.clique(id)) load[static_cast<std::size_t>(v)] += x;
  }
  return load;
}

inline std::vector<double> pair_loads(const CliqueSet& cliques, int m, std::span<const double> f) {
  std::vector<double> load(static_cast<std::size_t>(m), 0.0);
  for (CliqueId id = 0; id < cliques.size(); ++id) {
    const double x = f[static_cast<std::size_t>(id)];
    if (x == 0.0) continue;
    for (const EdgeId e : cliques.clique_edges(id)) load[static_cast<std::size_t>(e)] += x;
  }
  return load;
}

/// sum_{v in T} g(v) + sum_{uv in E(T)} h(uv).
inline double dual_cover(const CliqueSet& cliques, CliqueId id, const DualSolution& dual) {
  double s = 0.0;
  for (const Vertex v : cliques.clique(id)) s += dual.g[static_cast<std::size_t>(v)];
  for (const EdgeId e : cliques.clique_edges(id)) s += dual.h[static_cast<std::size_t>(e)];
  return s;
}

inline double dual_objective(const WeightedGraph& wg, const DualSolution& dual) {
  double s = std::accumulate(dual.g.begin(), dual.g.end(), 0.0);
  for (EdgeId e = 0; e < wg.num_edges(); ++e) s += dual.h[static_cast<std::size_t>(e)] * wg.weight(e);
  return s;
}

namespace lp_detail {

struct PackingProgramme {
  SparseColumns a;
  std::vector<double> b;
  std::vector<EdgeId> row_edge;  // row n + k carries edge row_edge[k]
};

inline PackingProgramme build_packing(const WeightedGraph& wg, const CliqueSet& cliques) {
  const int n = wg.num_vertices();
  std::vector<int> edge_row(static_cast<std::size_t>(wg.num_edges()), -1);
  PackingProgramme p;
  p.b.assign(static_cast<std::size_t>(n), 1.0);
  for (EdgeId e = 0; e < wg.num_edges(); ++e) {
    if (cliques.containing_edge(e).empty() || wg.weight(e) >= 1.0) continue;
    edge_row[static_cast<std::size_t>(e)] = n + static_cast<int>(p.row_edge.size());
    p.row_edge.push_back(e);
    p.b.push_back(wg.weight(e));
  }
  p.a = SparseColumns(static_cast<int>(p.b.size()));
  std::vector<int> rows;
  std::vector<double> vals;
  for (CliqueId id = 0; id < cliques.size(); ++id) {
    rows.clear();
    for (const Vertex v : cliques.clique(id)) rows.push_back(v);
    for (const EdgeId e : cliques.clique_edges(id))
      if (edge_row[static_cast<std::size_t>(e)] >= 0) rows.push_back(edge_row[static_cast<std::size_t>(e)]);
    vals.assign(rows.size(), 1.0);
    p.a.add_column(rows, vals);
  }
  return p;
}

inline void check_host(const WeightedGraph& wg, const CliqueSet& cliques) {
  const Graph& g = wg.graph();
  if (cliques.host_vertices() != g.num_vertices() || cliques.host_edges() != g.num_edges())
    throw InputError("clique set does not belong to this graph");
  const int t = cliques.t();
  for (CliqueId id = 0; id < cliques.size(); ++id) {
    const auto c = cliques.clique(id);
    const auto edges = cliques.clique_edges(id);
    std::size_t k = 0;
    for (int i = 0; i < t; ++i)
      for (int j = i + 1; j < t; ++j, ++k)
        if (g.edge(edges[k]) != Edge{c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]})
          throw InputError("clique set does not belong to this graph");
  }
}

}  // namespace lp_detail

/// Optimal primal/dual pair of the fractional K_t-matching programme.
inline LpSolution solve_fractional_matching(const WeightedGraph& wg, const CliqueSet& cliques,
                                            double tol = kDefaultLpTol) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  lp_detail::check_host(wg, cliques);
  const int n = wg.num_vertices();
  LpSolution sol;
  sol.dual.g.assign(static_cast<std::size_t>(n), 0.0);
  sol.dual.h.assign(static_cast<std::size_t>(wg.num_edges()), 0.0);
  sol.primal.f.assign(static_cast<std::size_t>(cliques.size()), 0.0);
  if (cliques.empty()) return sol;

  auto prog = lp_detail::build_packing(wg, cliques);
  sol.rows = prog.a.rows();
  RevisedSimplex simplex(prog.a, prog.b);
  std::vector<double> cost(static_cast<std::size_t>(cliques.size()), 1.0);
  simplex.set_cost(cost);
  const auto status = simplex.optimize();
  sol.iterations = simplex.iterations();
  sol.primal.f = simplex.primal();
  if (status == SimplexStatus::iteration_limit)
    throw LpIterationLimit(sol.primal.f, simplex.objective(), simplex.iterations());

  for (auto& x : sol.primal.f)
    if (x < 1e-12) x = 0.0;
  sol.primal.objective = std::accumulate(sol.primal.f.begin(), sol.primal.f.end(), 0.0);
  const auto y = simplex.duals();
  for (int v = 0; v < n; ++v) sol.dual.g[static_cast<std::size_t>(v)] = std::max(0.0, y[static_cast<std::size_t>(v)]);
  for (std::size_t k = 0; k < prog.row_edge.size(); ++k)
    sol.dual.h[static_cast<std::size_t>(prog.row_edge[k])] = std::max(0.0, y[static_cast<std::size_t>(n) + k]);
  sol.dual.objective = dual_objective(wg, sol.dual);

  // Certify the pair before handing it out.
  const auto vload = vertex_loads(cliques, n, sol.primal.f);
  for (const double l : vload)
    if (l > 1.0 + tol) throw NumericalError("primal vertex constraint violated by " + std::to_string(l - 1.0));
  const auto pload = pair_loads(cliques, wg.num_edges(), sol.primal.f);
  for (EdgeId e = 0; e < wg.num_edges(); ++e)
    if (pload[static_cast<std::size_t>(e)] > wg.weight(e) + tol)
      throw NumericalError("primal edge constraint violated on edge " + std::to_string(e));
  for (CliqueId id = 0; id < cliques.size(); ++id)
    if (dual_cover(cliques, id, sol.dual) < 1.0 - tol)
      throw NumericalError("dual constraint violated on clique " + std::to_string(id));
  if (std::abs(sol.primal.objective - sol.dual.objective) > 2.0 * tol)
    throw NumericalError("duality gap " + std::to_string(sol.primal.objective - sol.dual.objective));
  return sol;
}

inline PrimalSolution solve_primal(const WeightedGraph& wg, const CliqueSet& cliques, double tol = kDefaultLpTol) {
  return solve_fractional_matching(wg, cliques, tol).primal;
}

inline DualSolution solve_dual(const WeightedGraph& wg, const CliqueSet& cliques, double tol = kDefaultLpTol) {
  return solve_fractional_matching(wg, cliques, tol).dual;
}

/// t*(G, w): optimum of the fractional K_t-matching programme.
inline double t_star(const WeightedGraph& wg, int t, double tol = kDefaultLpTol) {
  const auto cliques = enumerate_cliques(wg.graph(), t);
  const double value = solve_fractional_matching(wg, cliques, tol).primal.objective;
  if (value > static_cast<double>(wg.num_vertices()) / t + tol)
    throw NumericalError("t* exceeds |V|/t");
  return value;
}

/// w(T) = min over the clique's edges.
inline double clique_weight(const WeightedGraph& wg, const CliqueSet& cliques, CliqueId id) {
  double w = 1.0;
  for (const EdgeId e : cliques.clique_edges(id)) w = std::min(w, wg.weight(e));
  return w;
}

inline constexpr int kMaxExactCliques = 10000;
inline constexpr long kDefaultNodeBudget = 20000000;

struct IntegralMatching {
  double value = 0.0;
  std::vector<CliqueId> family;
  long nodes = 0;
};

/// t(G, w): best vertex-disjoint clique family under min-edge weights,
/// by depth-first branch and bound over the lowest undecided vertex.
/// A node is pruned by the optimal dual restricted to the undecided
/// vertices, which bounds the integral optimum of that subproblem; the
/// search stops early once it reaches t*.
inline IntegralMatching integral_matching_value(const WeightedGraph& wg, const CliqueSet& cliques,
                                                long node_budget = kDefaultNodeBudget,
                                                double tol = kDefaultLpTol) {
  if (cliques.size() > kMaxExactCliques)
    throw ResourceError("integral_matching_value: " + std::to_string(cliques.size()) +
                        " cliques exceed the exact budget; use a greedy lower bound instead");
  const int n = wg.num_vertices();
  const int t = cliques.t();
  const Graph& g = wg.graph();
  const auto lp = solve_fractional_matching(wg, cliques, tol);
  std::vector<double> weight(static_cast<std::size_t>(cliques.size()));
  for (CliqueId id = 0; id < cliques.size(); ++id) weight[static_cast<std::size_t>(id)] = clique_weight(wg, cliques, id);
  std::vector<std::vector<CliqueId>> by_vertex(static_cast<std::size_t>(n));
  std::vector<double> best_at(static_cast<std::size_t>(n), 0.0);
  double global_max = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    auto list = cliques.containing(v);
    std::stable_sort(list.begin(), list.end(), [&](CliqueId a, CliqueId b) {
      return weight[static_cast<std::size_t>(a)] > weight[static_cast<std::size_t>(b)];
    });
    for (const CliqueId id : list) best_at[static_cast<std::size_t>(v)] = std::max(best_at[static_cast<std::size_t>(v)], weight[static_cast<std::size_t>(id)]);
    global_max = std::max(global_max, best_at[static_cast<std::size_t>(v)]);
    by_vertex[static_cast<std::size_t>(v)] = std::move(list);
  }

  IntegralMatching result;
  const double stop_at = lp.primal.objective - 2.0 * tol;
  // The dual is feasible up to tol; rescaling by 1/(1-tol) makes it exact.
  const double inflate = 1.0 / (1.0 - tol);
  std::vector<char> free(static_cast<std::size_t>(n), 1);
  double dual_free = lp.dual.objective;
  std::vector<CliqueId> chosen;
  double current = 0.0;
  bool done = false;

  const auto edge_price = [&](EdgeId e) { return lp.dual.h[static_cast<std::size_t>(e)] * wg.weight(e); };
  const auto release = [&](Vertex x, double sign) {
    double s = lp.dual.g[static_cast<std::size_t>(x)];
    const auto nb = g.neighbors(x);
    const auto inc = g.incident_edges(x);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (free[static_cast<std::size_t>(nb[k])]) s += edge_price(inc[k]);
    dual_free += sign * s;
  };
  const auto take = [&](Vertex x) {
    free[static_cast<std::size_t>(x)] = 0;
    release(x, -1.0);
  };
  const auto give_back = [&](Vertex x) {
    release(x, 1.0);
    free[static_cast<std::size_t>(x)] = 1;
  };
  const auto bound = [&](Vertex from) {
    double s = 0.0;
    int count = 0;
    for (Vertex u = from; u < n; ++u)
      if (free[static_cast<std::size_t>(u)]) {
        s += best_at[static_cast<std::size_t>(u)];
        ++count;
      }
    return std::min({s / t, (count / t) * global_max, dual_free * inflate + 1e-9});
  };

  auto search = [&](auto&& self, Vertex from) -> void {
    if (done) return;
    if (++result.nodes > node_budget)
      throw ResourceError("integral_matching_value: node budget exhausted; use a greedy lower bound instead");
    while (from < n && !free[static_cast<std::size_t>(from)]) ++from;
    if (current > result.value + 1e-12) {
      result.value = current;
      result.family = chosen;
      if (result.value >= stop_at) {
        done = true;
        return;
      }
    }
    if (from >= n) return;
    if (current + bound(from) <= result.value + 1e-12) return;
    for (const CliqueId id : by_vertex[static_cast<std::size_t>(from)]) {
      const auto tuple = cliques.clique(id);
      if (!std::all_of(tuple.begin(), tuple.end(), [&](Vertex u) { return free[static_cast<std::size_t>(u)] != 0; }))
        continue;
      for (const Vertex u : tuple) take(u);
      chosen.push_back(id);
      current += weight[static_cast<std::size_t>(id)];
      self(self, from + 1);
      current -= weight[static_cast<std::size_t>(id)];
      chosen.pop_back();
      for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) give_back(*it);
      if (done) return;
    }
    // Leave `from` uncovered.
    take(from);
    self(self, from + 1);
    give_back(from);
  };
  search(search, 0);
  return result;
}

inline IntegralMatching integral_matching_value(const WeightedGraph& wg, int t) {
  return integral_matching_value(wg, enumerate_cliques(wg.graph(), t));
}

/// Dual-positivity threshold sweep used for V_1 = {v : g(v) > threshold}.
inline const std::vector<double>& v1_thresholds() {
  static const std::vector<double> sweep{1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
  return sweep;
}

struct LpPropertyReport {
  int n = 0;
  int t = 0;
  double t_star = 0.0;
  double t_integral = 0.0;
  bool lower_by_integral = false;  // t* >= t(G,w)
  bool upper_by_size = false;      // t* <= |V|/t
  std::vector<Vertex> restriction;  // the random U
  bool restriction_feasible = false;
  double restricted_value = 0.0;  // |g'| + |h'|
  double restricted_t_star = 0.0;
  bool restriction_ok = false;
  int v1_size = 0;  // at 10 tol
  bool lower_by_support = false;  // t* >= |V_1|/t
  std::vector<std::pair<double, int>> v1_sweep;
  bool all_ok() const { return lower_by_integral && upper_by_size && restriction_ok && lower_by_support; }
};

/// Checks the four LP properties on one instance; the restriction test
/// uses a random U drawn from `seed`.
inline LpPropertyReport check_lp_properties(const WeightedGraph& wg, int t, double tol = kDefaultLpTol, std::uint64_t seed = 1) {
  const int n = wg.num_vertices();
  const auto cliques = enumerate_cliques(wg.graph(), t);
  const auto sol = solve_fractional_matching(wg, cliques, tol);
  LpPropertyReport r;
  r.n = n;
  r.t = t;
  r.t_star = sol.primal.objective;
  r.t_integral = integral_matching_value(wg, cliques, kDefaultNodeBudget, tol).value;
  r.lower_by_integral = r.t_star >= r.t_integral - tol;
  r.upper_by_size = r.t_star <= static_cast<double>(n) / t + tol;

  Rng rng(seed);
  const int size = n == 0 ? 0 : static_cast<int>(rng.between(0, n));
  r.restriction = rng.subset(n, size);
  std::vector<char> in_u(static_cast<std::size_t>(n), 0);
  for (const Vertex v : r.restriction) in_u[static_cast<std::size_t>(v)] = 1;
  const auto inside = [&](CliqueId id) {
    const auto c = cliques.clique(id);
    return std::all_of(c.begin(), c.end(), [&](Vertex v) { return in_u[static_cast<std::size_t>(v)] != 0; });
  };
  r.restriction_feasible = true;
  for (CliqueId id = 0; id < cliques.size(); ++id)
    if (inside(id) && dual_cover(cliques, id, sol.dual) < 1.0 - tol) r.restriction_feasible = false;
  for (const Vertex v : r.restriction) r.restricted_value += sol.dual.g[static_cast<std::size_t>(v)];
  for (EdgeId e = 0; e < wg.num_edges(); ++e) {
    const auto& ed = wg.graph().edge(e);
    if (in_u[static_cast<std::size_t>(ed.u)] && in_u[static_cast<std::size_t>(ed.v)])
      r.restricted_value += sol.dual.h[static_cast<std::size_t>(e)] * wg.weight(e);
  }
  const auto sub = induced_subgraph(wg.graph(), r.restriction);
  const auto sub_wg = induced_weighted(wg, sub);
  r.restricted_t_star = solve_fractional_matching(sub_wg, enumerate_cliques(sub.graph, t), tol).primal.objective;
  r.restriction_ok = r.restriction_feasible && r.restricted_value >= r.restricted_t_star - tol;

  for (const double threshold : v1_thresholds()) {
    const int count = static_cast<int>(std::count_if(sol.dual.g.begin(), sol.dual.g.end(), [&](double g) { return g > threshold; }));
    r.v1_sweep.emplace_back(threshold, count);
  }
  r.v1_size = static_cast<int>(std::count_if(sol.dual.g.begin(), sol.dual.g.end(), [&](double g) { return g > kActiveDualFactor * tol; }));
  r.lower_by_support = r.t_star >= static_cast<double>(r.v1_size) / t - tol;
  return r;
}

struct SlacknessReport {
  double objective_gap = 0.0;
  double worst_slack = 0.0;
  long active_vertices = 0;
  long active_edges = 0;
  long active_cliques = 0;
  bool ok = false;
};

/// Complementary slackness for a primal/dual pair: active dual prices
/// must sit on tight primal rows, and positive f on tight dual rows.
inline SlacknessReport complementary_slackness(const WeightedGraph& wg, const CliqueSet& cliques,
                                               const PrimalSolution& p, const DualSolution& d,
                                               double tol = kDefaultLpTol) {
  SlacknessReport r;
  r.objective_gap = std::abs(p.objective - d.objective);
  if (r.objective_gap > 2.0 * tol)
    throw NumericalError("objectives differ by " + std::to_string(r.objective_gap) +
                         "; solutions are not certified optimal");
  const double active = kActiveDualFactor * tol;
  const auto vload = vertex_loads(cliques, wg.num_vertices(), p.f);
  const auto pload = pair_loads(cliques, wg.num_edges(), p.f);
  for (Vertex v = 0; v < wg.num_vertices(); ++v)
    if (d.g[static_cast<std::size_t>(v)] > active) {
      ++r.active_vertices;
      r.worst_slack = std::max(r.worst_slack, std::abs(vload[static_cast<std::size_t>(v)] - 1.0));
    }
  for (EdgeId e = 0; e < wg.num_edges(); ++e)
    if (d.h[static_cast<std::size_t>(e)] > active) {
      ++r.active_edges;
      r.worst_slack = std::max(r.worst_slack, std::abs(pload[static_cast<std::size_t>(e)] - wg.weight(e)));
    }
  for (CliqueId id = 0; id < cliques.size(); ++id)
    if (p.f[static_cast<std::size_t>(id)] > active) {
      ++r.active_cliques;
      r.worst_slack = std::max(r.worst_slack, std::abs(dual_cover(cliques, id, d) - 1.0));
    }
  r.ok = r.worst_slack <= active;
  return r;
}

/// How a fractional factor is picked among the optimal ones.
///  - vertex: the optimal basic solution found by the simplex (sparse,
///    often close to integral).
///  - balanced: among all factors, one minimizing max_uv load(uv)/w(uv),
///    which leaves the most capacity for later extraction rounds.
enum class FactorPolicy { vertex, balanced };

inline std::string to_string(FactorPolicy p) { return p == FactorPolicy::vertex ? "vertex" : "balanced"; }

struct FactorCert {
  bool has_factor = false;
  double t_star = 0.0;
  double slack = 0.0;  // |V|/t - t*
  std::vector<double> per_vertex_load;
  std::vector<double> f;  // the factor when has_factor, else the optimal matching
  FactorPolicy policy = FactorPolicy::vertex;
  double dual_objective = 0.0;
  double max_relative_pair_load = 0.0;
};

namespace lp_detail {

/// Among fractional factors, minimize z subject to load(uv) <= z w(uv).
/// One simplex run: raise z to 1, maximize sum f (which reaches |V|/t
/// exactly when a factor exists), then minimize z on that optimal face.
inline std::vector<double> balanced_factor(const WeightedGraph& wg, const CliqueSet& cliques) {
  const int n = wg.num_vertices();
  std::vector<int> edge_row(static_cast<std::size_t>(wg.num_edges()), -1);
  std::vector<double> b(static_cast<std::size_t>(n), 1.0);
  std::vector<EdgeId> row_edge;
  for (EdgeId e = 0; e < wg.num_edges(); ++e) {
    if (cliques.containing_edge(e).empty()) continue;
    edge_row[static_cast<std::size_t>(e)] = static_cast<int>(b.size());
    row_edge.push_back(e);
    b.push_back(0.0);
  }
  const int z_row = static_cast<int>(b.size());
  b.push_back(1.0);
  SparseColumns a(static_cast<int>(b.size()));
  std::vector<int> rows;
  std::vector<double> vals;
  for (CliqueId id = 0; id < cliques.size(); ++id) {
    rows.clear();
    for (const Vertex v : cliques.clique(id)) rows.push_back(v);
    for (const EdgeId e : cliques.clique_edges(id)) rows.push_back(edge_row[static_cast<std::size_t>(e)]);
    vals.assign(rows.size(), 1.0);
    a.add_column(rows, vals);
  }
  rows.clear();
  vals.clear();
  for (std::size_t k = 0; k < row_edge.size(); ++k) {
    const double w = wg.weight(row_edge[k]);
    if (w == 0.0) continue;
    rows.push_back(n + static_cast<int>(k));
    vals.push_back(-w);
  }
  rows.push_back(z_row);
  vals.push_back(1.0);
  a.add_column(rows, vals);
  const int z = cliques.size();

  RevisedSimplex simplex(a, b);
  std::vector<double> cost(static_cast<std::size_t>(cliques.size()) + 1, 1.0);
  cost.back() = 0.0;
  simplex.set_cost(cost);
  simplex.pivot_in(z);
  if (simplex.optimize() != SimplexStatus::optimal) throw NumericalError("balanced factor: iteration cap");
  simplex.restrict_to_optimal_face();
  std::fill(cost.begin(), cost.end(), 0.0);
  cost.back() = -1.0;
  simplex.set_cost(cost);
  if (simplex.optimize() != SimplexStatus::optimal) throw NumericalError("balanced factor: iteration cap");
  auto x = simplex.primal();
  x.pop_back();
  for (auto& v : x)
    if (v < 1e-12) v = 0.0;
  return x;
}

}  // namespace lp_detail

/// Decides whether (G, w) has a fractional K_t-factor: it does exactly
/// when t* = |V|/t. The returned f has every vertex load equal to 1.
inline FactorCert has_fractional_factor(const WeightedGraph& wg, const CliqueSet& cliques, double tol = kDefaultLpTol,
                                        FactorPolicy policy = FactorPolicy::vertex) {
  const int n = wg.num_vertices();
  const int t = cliques.t();
  const auto sol = solve_fractional_matching(wg, cliques, tol);
  FactorCert cert;
  cert.policy = policy;
  cert.t_star = sol.primal.objective;
  cert.dual_objective = sol.dual.objective;
  cert.slack = static_cast<double>(n) / t - cert.t_star;
  cert.f = sol.primal.f;
  cert.has_factor = n > 0 && cert.t_star >= static_cast<double>(n) / t - tol;
  if (cert.has_factor && policy == FactorPolicy::balanced) cert.f = lp_detail::balanced_factor(wg, cliques);
  cert.per_vertex_load = vertex_loads(cliques, n, cert.f);
  if (cert.has_factor)
    for (const double l : cert.per_vertex_load)
      if (std::abs(l - 1.0) > tol) {
        cert.has_factor = false;
        break;
      }
  const auto pload = pair_loads(cliques, wg.num_edges(), cert.f);
  for (EdgeId e = 0; e < wg.num_edges(); ++e) {
    const double w = wg.weight(e);
    if (pload[static_cast<std::size_t>(e)] > 0.0)
      cert.max_relative_pair_load = std::max(cert.max_relative_pair_load, w > 0 ? pload[static_cast<std::size_t>(e)] / w : std::numeric_limits<double>::infinity());
  }
  return cert;
}

inline FactorCert has_fractional_factor(const WeightedGraph& wg, int t, double tol = kDefaultLpTol,
                                        FactorPolicy policy = FactorPolicy::vertex) {
  return has_fractional_factor(wg, enumerate_cliques(wg.graph(), t), tol, policy);
}

struct RichFactorConfig {
  long trials = 50;
  std::uint64_t seed = 1;
  FactorPolicy policy = FactorPolicy::vertex;
};

struct RichFactorReport {
  int t = 0;
  double alpha = 0.0;
  int D = 0;
  int rich_edges = 0;
  // (i) every vertex has floor(D/(t-1)) alpha-rich cliques meeting only at it
  int family_required = 0;
  int family_min = 0;
  int family_short_vertices = 0;
  bool families_ok = false;
  // (ii) every ceil(0.11 n / t) vertices span a K_t in H
  SpanAuditReport span;
  bool span_ok = false;
  // (iii) H has P(t, D, 0.2n, n)
  PropertyPReport property;
  bool property_ok = false;
  bool hypotheses_ok = false;
  FactorCert factor;
};

/// Audits the three sufficient conditions for a fractional factor on the
/// alpha-rich subgraph H, then decides the factor question directly, so a
/// failed hypothesis next to an existing factor is visible in the report.
inline RichFactorReport rich_factor_driver(const WeightedGraph& wg, int t, double alpha, int D,
                                           double tol = kDefaultLpTol, const RichFactorConfig& config = {}) {
  const int n = wg.num_vertices();
  if (t < 3) throw InputError("t must be at least 3");
  if (!(alpha >= 0.0 && alpha < 1.0 / (7.0 * t * t))) throw InputError("alpha must satisfy 0 <= alpha < 1/(7t^2)");
  if (D < 3 || 2 * D > n) throw InputError("D must satisfy 3 <= D <= n/2");
  RichFactorReport r;
  r.t = t;
  r.alpha = alpha;
  r.D = D;
  const Graph h = rich_subgraph(wg, alpha);
  r.rich_edges = h.num_edges();

  const Graph none(n, {});
  r.family_required = D / (t - 1);
  r.family_min = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < n; ++v) {
    const int size = static_cast<int>(vertex_family(h, none, v, t, r.family_required).cliques.size());
    r.family_min = std::min(r.family_min, size);
    if (size < r.family_required) ++r.family_short_vertices;
  }
  if (n == 0) r.family_min = 0;
  r.families_ok = r.family_short_vertices == 0;

  r.span = span_clique_audit(h, t, std::min(n, default_span_size(n, t)), config.trials, derive_seed(config.seed, 1));
  r.span_ok = r.span.failures == 0;
  r.property = property_P_audit(h, t, D, static_cast<int>(std::floor(0.2 * n)), config.trials, derive_seed(config.seed, 2));
  r.property_ok = r.property.failures == 0;
  r.hypotheses_ok = r.families_ok && r.span_ok && r.property_ok;
  r.factor = has_fractional_factor(wg, t, tol, config.policy);
  return r;
}

}  // namespace cfl

#endif  // CFL_LP_FACTOR_HPP
