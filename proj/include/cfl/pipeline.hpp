#ifndef CFL_PIPELINE_HPP
#define CFL_PIPELINE_HPP

// Factor extraction, the random hypergraph H_f and the matching stage.
//
// Bundles index their factors by the cliques of the full host graph, so
// dense and sparse bundles share one representation and H_f can be
// sampled from either.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfl/cliques.hpp"
#include "cfl/error.hpp"
#include "cfl/graph.hpp"
#include "cfl/lp_factor.hpp"
#include "cfl/parallel.hpp"
#include "cfl/rng.hpp"
#include "cfl/spectral.hpp"

namespace cfl {

enum class ExtractMode { dense, sparse };

inline std::string to_string(ExtractMode m) { return m == ExtractMode::dense ? "dense" : "sparse"; }

struct FactorBundle {
  CliqueSet cliques;                        // K_t(G) of the host graph
  std::vector<std::vector<double>> factors;  // f_i, indexed by clique id
  ExtractMode mode = ExtractMode::dense;
  std::vector<double> per_edge_load;  // sum_i sum_{T ⊇ uv} f_i(T)

  int ell() const { return static_cast<int>(factors.size()); }
  double max_edge_load() const {
    return per_edge_load.empty() ? 0.0 : *std::max_element(per_edge_load.begin(), per_edge_load.end());
  }
  /// f(T) = sum_i f_i(T).
  std::vector<double> total() const {
    std::vector<double> f(static_cast<std::size_t>(cliques.size()), 0.0);
    for (const auto& fi : factors)
      for (std::size_t k = 0; k < f.size(); ++k) f[k] += fi[k];
    return f;
  }
};

namespace pipeline_detail {

inline void add_factor(FactorBundle& bundle, std::vector<double> f) {
  const auto load = pair_loads(bundle.cliques, static_cast<int>(bundle.per_edge_load.size()), f);
  for (std::size_t e = 0; e < load.size(); ++e) bundle.per_edge_load[e] += load[e];
  bundle.factors.push_back(std::move(f));
}

inline FactorBundle empty_bundle(const Graph& g, int t, ExtractMode mode) {
  FactorBundle b{enumerate_cliques(g, t), {}, mode, {}};
  b.per_edge_load.assign(static_cast<std::size_t>(g.num_edges()), 0.0);
  return b;
}

}  // namespace pipeline_detail

/// A t-uniform hypergraph on vertices 0..n-1; each hyperedge is a
/// sorted t-tuple, with the probability it was sampled at.
struct RandomHypergraph {
  int t = 0;
  int n = 0;
  std::vector<std::vector<Vertex>> hyperedges;
  std::vector<double> inclusion_prob;

  static RandomHypergraph from_cliques(const CliqueSet& cliques, int n) {
    RandomHypergraph h{cliques.t(), n, {}, {}};
    for (CliqueId id = 0; id < cliques.size(); ++id) {
      const auto c = cliques.clique(id);
      h.hyperedges.emplace_back(c.begin(), c.end());
      h.inclusion_prob.push_back(1.0);
    }
    return h;
  }
};

enum class MatchMode { greedy, nibble };

inline std::string to_string(MatchMode m) { return m == MatchMode::greedy ? "greedy" : "nibble"; }

inline constexpr double kDefaultEpsilon = 0.1;

struct MatchingResult {
  int n = 0;
  std::vector<std::vector<Vertex>> matched;
  std::vector<Vertex> uncovered;
  int uncovered_count = 0;
  int nibble_rounds = 0;
  int from_nibble = 0;
  int from_greedy = 0;
  int improved_by = 0;  // vertices gained by local improvement
};

namespace pipeline_detail {

struct MatchState {
  const RandomHypergraph& h;
  std::vector<int> owner;  // matched hyperedge per vertex, -1 when free
  std::vector<char> in_matching;

  explicit MatchState(const RandomHypergraph& hg)
      : h(hg), owner(static_cast<std::size_t>(hg.n), -1), in_matching(hg.hyperedges.size(), 0) {}

  bool fits(std::size_t e) const {
    return std::all_of(h.hyperedges[e].begin(), h.hyperedges[e].end(),
                       [&](Vertex v) { return owner[static_cast<std::size_t>(v)] < 0; });
  }
  void add(std::size_t e) {
    in_matching[e] = 1;
    for (const Vertex v : h.hyperedges[e]) owner[static_cast<std::size_t>(v)] = static_cast<int>(e);
  }
  void remove(std::size_t e) {
    in_matching[e] = 0;
    for (const Vertex v : h.hyperedges[e]) owner[static_cast<std::size_t>(v)] = -1;
  }
  int greedy(const std::vector<std::size_t>& order) {
    int added = 0;
    for (const std::size_t e : order)
      if (!in_matching[e] && fits(e)) {
        add(e);
        ++added;
      }
    return added;
  }
  int covered() const {
    return static_cast<int>(std::count_if(owner.begin(), owner.end(), [](int o) { return o >= 0; }));
  }
};

}  // namespace pipeline_detail

/// Local improvement budget: proposals per vertex.
inline constexpr int kImprovementSweeps = 50;

/// Near-perfect matching of a hypergraph.
///  - greedy: hyperedges in uniformly random order.
///  - nibble: rounds in which each surviving hyperedge activates with
///    probability epsilon / (current max degree); activations that touch
///    no other activation join. Capped at 10 ceil(ln n) rounds, then
///    greedy cleanup.
/// With `improve`, a final exchange phase inserts a hyperedge at an
/// uncovered vertex, evicts what it overlaps, refills greedily and keeps
/// the change when coverage does not drop.
inline MatchingResult nibble_matching(const RandomHypergraph& h, MatchMode mode, double epsilon, std::uint64_t seed,
                                      bool improve = true) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
  const std::size_t m = h.hyperedges.size();
  pipeline_detail::MatchState st(h);
  Rng rng(seed);
  MatchingResult r;
  r.n = h.n;

  if (mode == MatchMode::nibble && m > 0) {
    const int cap = 10 * static_cast<int>(std::ceil(std::log(std::max(2, h.n))));
    std::vector<std::size_t> alive(m);
    for (std::size_t e = 0; e < m; ++e) alive[e] = e;
    std::vector<int> hits(static_cast<std::size_t>(h.n), 0);
    std::vector<int> deg(static_cast<std::size_t>(h.n), 0);
    for (int round = 0; round < cap && !alive.empty(); ++round) {
      std::fill(deg.begin(), deg.end(), 0);
      for (const std::size_t e : alive)
        for (const Vertex v : h.hyperedges[e]) ++deg[static_cast<std::size_t>(v)];
      const int delta = *std::max_element(deg.begin(), deg.end());
      const double p = epsilon / static_cast<double>(std::max(delta, 1));
      std::vector<std::size_t> active;
      for (const std::size_t e : alive)
        if (rng.bernoulli(p)) active.push_back(e);
      for (const std::size_t e : active)
        for (const Vertex v : h.hyperedges[e]) ++hits[static_cast<std::size_t>(v)];
      for (const std::size_t e : active) {
        const auto& he = h.hyperedges[e];
        if (std::all_of(he.begin(), he.end(), [&](Vertex v) { return hits[static_cast<std::size_t>(v)] == 1; })) {
          st.add(e);
          ++r.from_nibble;
        }
      }
      for (const std::size_t e : active)
        for (const Vertex v : h.hyperedges[e]) hits[static_cast<std::size_t>(v)] = 0;
      std::erase_if(alive, [&](std::size_t e) { return !st.fits(e); });
      ++r.nibble_rounds;
    }
  }

  std::vector<std::size_t> order(m);
  for (std::size_t e = 0; e < m; ++e) order[e] = e;
  rng.shuffle(order);
  r.from_greedy = st.greedy(order);

  if (improve && m > 0) {
    std::vector<std::vector<std::size_t>> at(static_cast<std::size_t>(h.n));
    for (std::size_t e = 0; e < m; ++e)
      for (const Vertex v : h.hyperedges[e]) at[static_cast<std::size_t>(v)].push_back(e);
    const int start = st.covered();
    const long budget = static_cast<long>(kImprovementSweeps) * h.n;
    std::vector<Vertex> open;
    for (long step = 0; step < budget; ++step) {
      open.clear();
      for (Vertex v = 0; v < h.n; ++v)
        if (st.owner[static_cast<std::size_t>(v)] < 0 && !at[static_cast<std::size_t>(v)].empty()) open.push_back(v);
      if (open.empty()) break;
      const Vertex v = open[rng.below(open.size())];
      const auto& options = at[static_cast<std::size_t>(v)];
      const std::size_t e = options[rng.below(options.size())];
      const int before = st.covered();
      std::vector<std::size_t> evicted;
      for (const Vertex u : h.hyperedges[e]) {
        const int o = st.owner[static_cast<std::size_t>(u)];
        if (o >= 0 && std::find(evicted.begin(), evicted.end(), static_cast<std::size_t>(o)) == evicted.end())
          evicted.push_back(static_cast<std::size_t>(o));
      }
      for (const std::size_t x : evicted) st.remove(x);
      st.add(e);
      // Refill around the freed vertices.
      std::vector<std::size_t> refill;
      for (const std::size_t x : evicted)
        for (const Vertex u : h.hyperedges[x])
          for (const std::size_t y : at[static_cast<std::size_t>(u)]) refill.push_back(y);
      rng.shuffle(refill);
      std::vector<std::size_t> added;
      for (const std::size_t y : refill)
        if (!st.in_matching[y] && st.fits(y)) {
          st.add(y);
          added.push_back(y);
        }
      if (st.covered() < before) {
        for (const std::size_t y : added) st.remove(y);
        st.remove(e);
        for (const std::size_t x : evicted) st.add(x);
      }
    }
    r.improved_by = st.covered() - start;
  }

  for (std::size_t e = 0; e < m; ++e)
    if (st.in_matching[e]) r.matched.push_back(h.hyperedges[e]);
  std::sort(r.matched.begin(), r.matched.end());
  for (Vertex v = 0; v < h.n; ++v)
    if (st.owner[static_cast<std::size_t>(v)] < 0) r.uncovered.push_back(v);
  r.uncovered_count = static_cast<int>(r.uncovered.size());
  return r;
}

/// Exact K_t-partition among the cliques whose edges all have full
/// weight, found by the matching heuristic. Such a partition is a
/// fractional factor with every pair load in {0, 1}.
inline std::optional<std::vector<double>> integral_factor(const WeightedGraph& wg, const CliqueSet& cliques,
                                                          std::uint64_t seed) {
  const int n = wg.num_vertices();
  if (n == 0 || n % cliques.t() != 0) return std::nullopt;
  RandomHypergraph h{cliques.t(), n, {}, {}};
  std::vector<CliqueId> source;
  for (CliqueId id = 0; id < cliques.size(); ++id)
    if (clique_weight(wg, cliques, id) >= 1.0 - kWeightSlack) {
      const auto c = cliques.clique(id);
      h.hyperedges.emplace_back(c.begin(), c.end());
      h.inclusion_prob.push_back(1.0);
      source.push_back(id);
    }
  const auto match = nibble_matching(h, MatchMode::greedy, kDefaultEpsilon, seed, true);
  if (match.uncovered_count != 0) return std::nullopt;
  std::vector<double> f(static_cast<std::size_t>(cliques.size()), 0.0);
  for (const auto& tuple : match.matched) f[static_cast<std::size_t>(*cliques.find(tuple))] = 1.0;
  return f;
}

/// Factor selection shared by both engines. With `prefer_integral` an
/// exact partition is tried first; the LP still decides existence.
struct ExtractOptions {
  FactorPolicy policy = FactorPolicy::vertex;
  bool prefer_integral = false;
  std::uint64_t seed = 1;
  double tol = kDefaultLpTol;
};

inline FactorCert extract_factor(const WeightedGraph& wg, const CliqueSet& cliques, const ExtractOptions& opt,
                                 bool& integral) {
  integral = false;
  auto cert = has_fractional_factor(wg, cliques, opt.tol, opt.policy);
  if (!cert.has_factor || !opt.prefer_integral) return cert;
  if (auto f = integral_factor(wg, cliques, opt.seed)) {
    cert.f = std::move(*f);
    cert.per_vertex_load = vertex_loads(cliques, wg.num_vertices(), cert.f);
    integral = true;
  }
  return cert;
}

/// Default alpha of the dense branch: (d/(4n))^{t-2} / (20t).
inline double default_dense_alpha(int n, int d, int t) {
  return std::pow(static_cast<double>(d) / (4.0 * n), t - 2) / (20.0 * t);
}

/// Default number of factors: max(2, floor(n^beta)).
inline int default_ell(int n, int t) {
  return std::max(2, static_cast<int>(std::floor(std::pow(static_cast<double>(n), factor_exponent_beta(t)) + 1e-12)));
}

struct DenseRound {
  int index = 0;
  double t_star = 0.0;
  bool has_factor = false;
  int rich_edges = 0;               // edges with w >= 1 - alpha before the round
  double max_decrement_residual = 0.0;  // max_v |deg drop - (t-1)|
  double max_clamp_violation = 0.0;     // most negative weight before clamping
  bool integral = false;  // the factor is an exact K_t-partition
};

struct DenseExtraction {
  FactorBundle bundle;
  std::vector<DenseRound> rounds;
  double alpha = 0.0;
  bool stopped_early = false;
  std::vector<double> final_weights;
};

/// Iterated factor extraction with the weight update
/// w(uv) := w(uv) - sum_{T ⊇ uv} f_i(T), starting from w = 1.
/// Every weighted degree drops by exactly (t-1) per extracted factor.
inline DenseExtraction dense_extract(const Graph& g, int t, int ell, std::optional<double> alpha = std::nullopt,
                                     ExtractOptions opt = {FactorPolicy::balanced}) {
  const double tol = opt.tol;
  if (t < 3) throw InputError("dense_extract needs t >= 3");
  if (ell < 1) throw InputError("dense_extract needs ell >= 1");
  const int n = g.num_vertices();
  const auto reg = regularity(g);
  DenseExtraction out{pipeline_detail::empty_bundle(g, t, ExtractMode::dense), {}, 0.0, false, {}};
  out.alpha = alpha ? *alpha : default_dense_alpha(n, reg.max_deg, t);
  if (!(out.alpha >= 0.0 && out.alpha <= 1.0)) throw InputError("alpha must lie in [0,1]");
  std::vector<double> w(static_cast<std::size_t>(g.num_edges()), 1.0);
  for (int i = 0; i < ell; ++i) {
    const WeightedGraph wg(g, w);
    DenseRound round;
    round.index = i;
    round.rich_edges = rich_subgraph(wg, out.alpha).num_edges();
    FactorCert cert;
    try {
      cert = extract_factor(wg, out.bundle.cliques, {opt.policy, opt.prefer_integral, derive_seed(opt.seed, i), tol},
                            round.integral);
    } catch (const NumericalError& e) {
      throw NumericalError("dense_extract round " + std::to_string(i) + ": " + e.what());
    }
    round.t_star = cert.t_star;
    round.has_factor = cert.has_factor;
    if (!cert.has_factor) {
      out.rounds.push_back(round);
      out.stopped_early = true;
      break;
    }
    std::vector<double> before(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) before[static_cast<std::size_t>(v)] = weighted_degree(wg, v);
    const auto load = pair_loads(out.bundle.cliques, g.num_edges(), cert.f);
    for (std::size_t e = 0; e < w.size(); ++e) {
      w[e] -= load[e];
      round.max_clamp_violation = std::max(round.max_clamp_violation, -w[e]);
      w[e] = std::clamp(w[e], 0.0, 1.0);
    }
    if (round.max_clamp_violation > 10.0 * tol)
      throw InvariantError("dense_extract round " + std::to_string(i) + ": weight fell to " +
                           std::to_string(-round.max_clamp_violation));
    const WeightedGraph next(g, w);
    for (Vertex v = 0; v < n; ++v) {
      const double drop = before[static_cast<std::size_t>(v)] - weighted_degree(next, v);
      round.max_decrement_residual = std::max(round.max_decrement_residual, std::abs(drop - (t - 1)));
    }
    if (round.max_decrement_residual > 10.0 * tol)
      throw InvariantError("dense_extract round " + std::to_string(i) + ": degree decrement off by " +
                           std::to_string(round.max_decrement_residual));
    pipeline_detail::add_factor(out.bundle, std::move(cert.f));
    out.rounds.push_back(round);
  }
  out.final_weights = std::move(w);
  return out;
}

/// Assigns every edge to one of `ell` parts, independently and uniformly.
inline std::vector<Graph> sparse_split(const Graph& g, int ell, std::uint64_t seed) {
  if (ell < 1) throw InputError("sparse_split needs ell >= 1");
  std::vector<std::vector<Edge>> parts(static_cast<std::size_t>(ell));
  Rng rng(seed);
  for (const auto& e : g.edges()) parts[rng.below(static_cast<std::uint64_t>(ell))].push_back(e);
  std::vector<Graph> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.emplace_back(g.num_vertices(), std::move(p));
  return out;
}

struct SplitBalance {
  double expected = 0.0;  // m / ell
  double sigma = 0.0;     // sqrt(m (1/ell)(1 - 1/ell))
  std::vector<int> part_edges;
  double max_z = 0.0;
  int outside_5_sigma = 0;
};

inline SplitBalance split_balance(const Graph& g, const std::vector<Graph>& parts) {
  SplitBalance s;
  const double m = g.num_edges();
  const double p = 1.0 / static_cast<double>(parts.size());
  s.expected = m * p;
  s.sigma = std::sqrt(m * p * (1.0 - p));
  for (const auto& part : parts) {
    s.part_edges.push_back(part.num_edges());
    const double z = s.sigma > 0 ? std::abs(part.num_edges() - s.expected) / s.sigma : 0.0;
    s.max_z = std::max(s.max_z, z);
    if (z > 5.0) ++s.outside_5_sigma;
  }
  return s;
}

struct SparsePart {
  int index = 0;
  int edges = 0;
  int cliques = 0;
  int min_vertex_cliques = 0;  // per-vertex K_t count inside the part
  int max_vertex_cliques = 0;
  bool has_factor = false;
  bool integral = false;
  double t_star = 0.0;
};

struct SparseExtraction {
  FactorBundle bundle;
  std::vector<SparsePart> parts;
  SplitBalance balance;
  std::vector<int> failed_parts;
};

/// Random edge split into `ell` parts, then a factor of each part with
/// w = 1. Parts are edge-disjoint, so the aggregate edge load is at most 1
/// and every clique is used by at most one factor.
inline SparseExtraction sparse_extract(const Graph& g, int t, int ell, std::uint64_t seed, ExtractOptions opt = {}) {
  if (t < 3) throw InputError("sparse_extract needs t >= 3");
  const auto split = sparse_split(g, ell, seed);
  SparseExtraction out{pipeline_detail::empty_bundle(g, t, ExtractMode::sparse), {}, split_balance(g, split), {}};
  std::vector<SparsePart> parts(split.size());
  std::vector<std::vector<double>> host_f(split.size());
  parallel_for(split.size(), [&](std::size_t i) {
    const Graph& part = split[i];
    const auto cliques = enumerate_cliques(part, t);
    SparsePart& info = parts[i];
    info.index = static_cast<int>(i);
    info.edges = part.num_edges();
    info.cliques = cliques.size();
    info.min_vertex_cliques = std::numeric_limits<int>::max();
    for (Vertex v = 0; v < part.num_vertices(); ++v) {
      const int c = static_cast<int>(cliques.containing(v).size());
      info.min_vertex_cliques = std::min(info.min_vertex_cliques, c);
      info.max_vertex_cliques = std::max(info.max_vertex_cliques, c);
    }
    if (part.num_vertices() == 0) info.min_vertex_cliques = 0;
    const auto cert = extract_factor(WeightedGraph::uniform(part, 1.0), cliques,
                                     {opt.policy, opt.prefer_integral, derive_seed(opt.seed, i), opt.tol}, info.integral);
    info.has_factor = cert.has_factor;
    info.t_star = cert.t_star;
    if (!cert.has_factor) return;
    std::vector<double> f(static_cast<std::size_t>(out.bundle.cliques.size()), 0.0);
    for (CliqueId id = 0; id < cliques.size(); ++id) {
      const double x = cert.f[static_cast<std::size_t>(id)];
      if (x == 0.0) continue;
      const auto host = out.bundle.cliques.find(cliques.clique(id));
      if (!host) throw InvariantError("part clique missing from host graph");
      f[static_cast<std::size_t>(*host)] = x;
    }
    host_f[i] = std::move(f);
  });
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (parts[i].has_factor) pipeline_detail::add_factor(out.bundle, std::move(host_f[i]));
    else out.failed_parts.push_back(static_cast<int>(i));
  }
  out.parts = std::move(parts);
  return out;
}

/// Largest number of factors giving one clique positive weight.
inline int max_factors_per_clique(const FactorBundle& bundle, double threshold = 0.0) {
  int worst = 0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(bundle.cliques.size()); ++k) {
    int c = 0;
    for (const auto& f : bundle.factors)
      if (f[k] > threshold) ++c;
    worst = std::max(worst, c);
  }
  return worst;
}

/// H_f: each clique T kept independently with probability f(T).
inline RandomHypergraph build_Hf(const FactorBundle& bundle, int n, std::uint64_t seed, double tol = kDefaultLpTol) {
  const auto f = bundle.total();
  RandomHypergraph h{bundle.cliques.t(), n, {}, {}};
  Rng rng(seed);
  for (CliqueId id = 0; id < bundle.cliques.size(); ++id) {
    const double p = f[static_cast<std::size_t>(id)];
    if (p > 1.0 + 10.0 * tol) {
      std::string name;
      for (const Vertex v : bundle.cliques.clique(id)) name += (name.empty() ? "" : ",") + std::to_string(v);
      throw InvariantError("clique {" + name + "} has total weight " + std::to_string(p) + " > 1");
    }
    if (p <= 0.0) continue;
    if (rng.bernoulli(std::min(p, 1.0))) {
      const auto c = bundle.cliques.clique(id);
      h.hyperedges.emplace_back(c.begin(), c.end());
      h.inclusion_prob.push_back(std::min(p, 1.0));
    }
  }
  return h;
}

inline std::vector<int> hypergraph_degrees(const RandomHypergraph& h) {
  std::vector<int> deg(static_cast<std::size_t>(h.n), 0);
  for (const auto& e : h.hyperedges)
    for (const Vertex v : e) ++deg[static_cast<std::size_t>(v)];
  return deg;
}

inline int max_codegree(const RandomHypergraph& h) {
  std::unordered_map<std::uint64_t, int> co;
  int worst = 0;
  for (const auto& e : h.hyperedges)
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b) {
        const auto key = static_cast<std::uint64_t>(e[a]) * static_cast<std::uint64_t>(h.n) + static_cast<std::uint64_t>(e[b]);
        worst = std::max(worst, ++co[key]);
      }
  return worst;
}

struct ConcentrationReport {
  bool applicable = false;  // needs ell >= 2
  int ell = 0;
  double k = 0.0;  // 8 beta^{-1/2}
  double degree_lower = 0.0;
  double degree_upper = 0.0;
  int min_degree = 0;
  int max_degree = 0;
  double mean_degree = 0.0;
  int outside_band = 0;
  int isolated = 0;  // degree 0; the band is wide enough to contain them
  double codegree_bound = 0.0;  // 1 + 3 ln n
  int max_codegree = 0;
  bool codegree_ok = true;
  bool flagged = false;
};

/// Degrees against ell ± (k/2) sqrt(ell ln ell) and codegrees against
/// 1 + 3 ln n. Audit only.
inline ConcentrationReport concentration_audit(const RandomHypergraph& h, int ell, int n) {
  ConcentrationReport r;
  r.ell = ell;
  r.applicable = ell >= 2;
  const auto deg = hypergraph_degrees(h);
  if (!deg.empty()) {
    r.min_degree = *std::min_element(deg.begin(), deg.end());
    r.max_degree = *std::max_element(deg.begin(), deg.end());
    double s = 0.0;
    for (const int x : deg) s += x;
    r.mean_degree = s / static_cast<double>(deg.size());
  }
  r.isolated = static_cast<int>(std::count(deg.begin(), deg.end(), 0));
  r.codegree_bound = n > 0 ? 1.0 + 3.0 * std::log(static_cast<double>(n)) : 1.0;
  r.max_codegree = max_codegree(h);
  r.codegree_ok = r.max_codegree <= r.codegree_bound;
  if (!r.applicable) return r;
  r.k = 8.0 / std::sqrt(factor_exponent_beta(std::max(h.t, 3)));
  const double half = 0.5 * r.k * std::sqrt(ell * std::log(static_cast<double>(ell)));
  r.degree_lower = ell - half;
  r.degree_upper = ell + half;
  for (const int x : deg)
    if (x < r.degree_lower || x > r.degree_upper) ++r.outside_band;
  r.flagged = r.outside_band > 0 || r.isolated > 0 || !r.codegree_ok;
  return r;
}

enum class ModeChoice { automatic, dense, sparse };

inline std::string to_string(ModeChoice m) {
  switch (m) {
    case ModeChoice::automatic: return "auto";
    case ModeChoice::dense: return "dense";
    case ModeChoice::sparse: return "sparse";
  }
  return "?";
}

struct PipelineConfig {
  int t = 3;
  ModeChoice mode = ModeChoice::automatic;
  std::optional<int> ell;
  std::optional<double> alpha;
  double epsilon = kDefaultEpsilon;
  MatchMode match = MatchMode::nibble;
  bool improve = true;
  FactorPolicy policy = FactorPolicy::vertex;
  bool prefer_integral = true;
  std::uint64_t seed = 1;
  double tol = kDefaultLpTol;
};

struct PipelineReport {
  // parameters
  int n = 0;
  int d = 0;
  int t = 0;
  double lambda = 0.0;
  int ell_target = 0;
  int ell_achieved = 0;
  std::uint64_t seed = 0;
  ModeChoice mode_requested = ModeChoice::automatic;
  ExtractMode mode = ExtractMode::dense;
  PipelineConfig config;
  // stage audits
  HypothesisReport hypothesis;
  std::optional<DenseExtraction> dense;    // bundle factors are dropped from reports
  std::optional<SparseExtraction> sparse;
  double max_edge_load = 0.0;
  int max_factors_per_clique = 0;
  int hf_hyperedges = 0;
  ConcentrationReport concentration;
  // result
  MatchingResult matching;
  double uncovered_fraction = 0.0;
  double asymptotic_bound = 0.0;  // n^{1 - 1/(8 t^4)}
  bool asymptotic_bound_vacuous = true;
  bool within_asymptotic_bound = false;
  double delta_prime = 0.0;  // matching-stage wiring: 1/t
  double gamma = 0.9;
  double codegree_constant = 0.0;  // 1 + 3 ln n
};

/// Degree threshold separating the two extraction engines.
inline ExtractMode auto_mode(const HypothesisReport& hyp) {
  return hyp.dense_ok ? ExtractMode::dense : ExtractMode::sparse;
}

/// Spectral certificate, extraction, H_f, matching. Seeds for the
/// stages derive from config.seed.
inline PipelineReport run_end_to_end(const Graph& g, const PipelineConfig& config) {
  const int t = config.t;
  if (t < 3) throw InputError("pipeline needs t >= 3");
  const int n = g.num_vertices();
  PipelineReport r;
  r.n = n;
  r.t = t;
  r.seed = config.seed;
  r.config = config;
  r.mode_requested = config.mode;
  const auto reg = regularity(g);
  if (!reg.is_regular) throw InputError("pipeline needs a regular graph");
  r.d = reg.d;
  SpectralCert cert;
  try {
    cert = second_eigenvalue(g);
  } catch (const std::exception& e) {
    throw NumericalError(std::string("stage spectrum: ") + e.what());
  }
  r.lambda = cert.lambda;
  r.hypothesis = hypothesis_check(cert, t);
  r.ell_target = config.ell ? *config.ell : default_ell(n, t);
  if (r.ell_target < 1) throw InputError("ell must be at least 1");
  r.mode = config.mode == ModeChoice::automatic ? auto_mode(r.hypothesis)
           : config.mode == ModeChoice::dense   ? ExtractMode::dense
                                                : ExtractMode::sparse;

  const FactorBundle* bundle = nullptr;
  try {
    if (r.mode == ExtractMode::dense) {
      r.dense = dense_extract(g, t, r.ell_target, config.alpha,
                              {config.policy, config.prefer_integral, derive_seed(config.seed, 4), config.tol});
      bundle = &r.dense->bundle;
    } else {
      r.sparse = sparse_extract(g, t, r.ell_target, derive_seed(config.seed, 1),
                                {config.policy, config.prefer_integral, derive_seed(config.seed, 4), config.tol});
      bundle = &r.sparse->bundle;
    }
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("stage extract: ") + e.what());
  }
  r.ell_achieved = bundle->ell();
  r.max_edge_load = bundle->max_edge_load();
  r.max_factors_per_clique = max_factors_per_clique(*bundle);

  const auto hf = build_Hf(*bundle, n, derive_seed(config.seed, 2), config.tol);
  r.hf_hyperedges = static_cast<int>(hf.hyperedges.size());
  r.concentration = concentration_audit(hf, r.ell_achieved, n);
  r.matching = nibble_matching(hf, config.match, config.epsilon, derive_seed(config.seed, 3), config.improve);
  r.uncovered_fraction = n > 0 ? static_cast<double>(r.matching.uncovered_count) / n : 0.0;

  r.asymptotic_bound = std::pow(static_cast<double>(n), 1.0 - 1.0 / (8.0 * std::pow(t, 4)));
  r.asymptotic_bound_vacuous = r.asymptotic_bound >= n - 1.0;
  r.within_asymptotic_bound = r.matching.uncovered_count <= r.asymptotic_bound;
  r.delta_prime = 1.0 / t;
  r.codegree_constant = n > 0 ? 1.0 + 3.0 * std::log(static_cast<double>(n)) : 1.0;
  return r;
}

}  // namespace cfl

#endif  // CFL_PIPELINE_HPP
