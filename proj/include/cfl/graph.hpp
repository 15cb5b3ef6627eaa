#ifndef CFL_GRAPH_HPP
#define CFL_GRAPH_HPP

// Simple undirected graphs on dense vertex ids 0..n-1, plus edge weights.
//
// Edges are stored canonically as (u, v) with u < v, sorted
// lexicographically; an edge's position in that order is its id. Every
// per-edge quantity in the library (weights, loads, dual prices) is a
// vector indexed by edge id.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfl/error.hpp"

namespace cfl {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an arbitrary pair list; duplicates and both
  /// orientations collapse to one edge.
  static Graph from_edge_list(int n, std::span<const std::pair<Vertex, Vertex>> pairs) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                         ") has a vertex outside 0.." + std::to_string(n - 1));
      if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return Graph(n, std::move(edges));
  }

  static Graph from_edge_list(int n, std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    return from_edge_list(n, std::span<const std::pair<Vertex, Vertex>>(pairs.begin(), pairs.size()));
  }

  /// Edges must already be canonical (u < v) and in range; they are
  /// sorted and deduplicated here.
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    build_adjacency();
  }

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    const auto b = offsets_[static_cast<std::size_t>(v)];
    const auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return {adj_.data() + b, e - b};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    const auto b = offsets_[static_cast<std::size_t>(v)];
    const auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return {adj_edge_.data() + b, e - b};
  }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  std::optional<EdgeId> edge_id(Vertex u, Vertex v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return std::nullopt;
    const auto nb = neighbors(u);
    const auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
  }
  bool has_edge(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency() {
    std::vector<std::size_t> deg(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& e : edges_) {
      ++deg[static_cast<std::size_t>(e.u)];
      ++deg[static_cast<std::size_t>(e.v)];
    }
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int v = 0; v < n_; ++v)
      offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];
    adj_.assign(offsets_.back(), 0);
    adj_edge_.assign(offsets_.back(), 0);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted, so each list fills in ascending neighbor order
    // except for the "lower" half; a final sort per vertex fixes that.
    for (EdgeId id = 0; id < num_edges(); ++id) {
      const auto& e = edges_[static_cast<std::size_t>(id)];
      adj_[fill[static_cast<std::size_t>(e.u)]] = e.v;
      adj_edge_[fill[static_cast<std::size_t>(e.u)]++] = id;
      adj_[fill[static_cast<std::size_t>(e.v)]] = e.u;
      adj_edge_[fill[static_cast<std::size_t>(e.v)]++] = id;
    }
    for (int v = 0; v < n_; ++v) {
      const auto b = offsets_[static_cast<std::size_t>(v)];
      const auto e = offsets_[static_cast<std::size_t>(v) + 1];
      std::vector<std::pair<Vertex, EdgeId>> tmp;
      tmp.reserve(e - b);
      for (auto i = b; i < e; ++i) tmp.emplace_back(adj_[i], adj_edge_[i]);
      std::sort(tmp.begin(), tmp.end());
      for (auto i = b; i < e; ++i) {
        adj_[i] = tmp[i - b].first;
        adj_edge_[i] = tmp[i - b].second;
      }
    }
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<EdgeId> adj_edge_;
};

/// Comparison slack for weight thresholds; absorbs rounding from the
/// iterated weight updates.
inline constexpr double kWeightSlack = 1e-12;

class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(Graph base, std::vector<double> weights)
      : base_(std::move(base)), w_(std::move(weights)) {
    if (static_cast<int>(w_.size()) != base_.num_edges())
      throw InputError("weight vector has " + std::to_string(w_.size()) + " entries for " +
                       std::to_string(base_.num_edges()) + " edges");
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (!(w_[i] >= 0.0 && w_[i] <= 1.0))
        throw InputError("weight of edge " + std::to_string(i) + " is outside [0,1]");
  }
  /// Uniform weight on every edge.
  static WeightedGraph uniform(Graph base, double weight) {
    std::vector<double> w(static_cast<std::size_t>(base.num_edges()), weight);
    return WeightedGraph(std::move(base), std::move(w));
  }

  const Graph& graph() const { return base_; }
  int num_vertices() const { return base_.num_vertices(); }
  int num_edges() const { return base_.num_edges(); }
  const std::vector<double>& weights() const { return w_; }
  double weight(EdgeId e) const { return w_[static_cast<std::size_t>(e)]; }

 private:
  Graph base_;
  std::vector<double> w_;
};

struct RegularityInfo {
  bool is_regular = false;
  int d = 0;  // common degree; meaningful only when is_regular
  int min_deg = 0;
  int max_deg = 0;
};

inline RegularityInfo regularity(const Graph& g) {
  RegularityInfo info;
  if (g.num_vertices() == 0) {
    info.is_regular = true;
    return info;
  }
  info.min_deg = info.max_deg = g.degree(0);
  for (Vertex v = 1; v < g.num_vertices(); ++v) {
    info.min_deg = std::min(info.min_deg, g.degree(v));
    info.max_deg = std::max(info.max_deg, g.degree(v));
  }
  info.is_regular = info.min_deg == info.max_deg;
  info.d = info.is_regular ? info.min_deg : 0;
  return info;
}

inline double weighted_degree(const WeightedGraph& wg, Vertex v) {
  if (v < 0 || v >= wg.num_vertices()) throw InputError("vertex out of range");
  double s = 0.0;
  for (const EdgeId e : wg.graph().incident_edges(v)) s += wg.weight(e);
  return s;
}

/// Spanning subgraph of the alpha-rich edges, w(uv) >= 1 - alpha.
inline Graph rich_subgraph(const WeightedGraph& wg, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0,1]");
  std::vector<Edge> kept;
  const double threshold = 1.0 - alpha - kWeightSlack;
  for (EdgeId e = 0; e < wg.num_edges(); ++e)
    if (wg.weight(e) >= threshold) kept.push_back(wg.graph().edge(e));
  return Graph(wg.num_vertices(), std::move(kept));
}

/// Same vertex set, edge set E(g) \ E(g2).
inline Graph graph_difference(const Graph& g, const Graph& g2) {
  if (g.num_vertices() != g2.num_vertices())
    throw InputError("graph_difference needs equal vertex counts");
  std::vector<Edge> kept;
  std::set_difference(g.edges().begin(), g.edges().end(), g2.edges().begin(), g2.edges().end(),
                      std::back_inserter(kept));
  return Graph(g.num_vertices(), std::move(kept));
}

/// Edge set E(g) ∩ E(g2) on the same vertex set.
inline Graph graph_intersection(const Graph& g, const Graph& g2) {
  if (g.num_vertices() != g2.num_vertices())
    throw InputError("graph_intersection needs equal vertex counts");
  std::vector<Edge> kept;
  std::set_intersection(g.edges().begin(), g.edges().end(), g2.edges().begin(), g2.edges().end(),
                        std::back_inserter(kept));
  return Graph(g.num_vertices(), std::move(kept));
}

inline Graph graph_union(const Graph& g, const Graph& g2) {
  if (g.num_vertices() != g2.num_vertices())
    throw InputError("graph_union needs equal vertex counts");
  std::vector<Edge> all;
  std::set_union(g.edges().begin(), g.edges().end(), g2.edges().begin(), g2.edges().end(),
                 std::back_inserter(all));
  return Graph(g.num_vertices(), std::move(all));
}

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;  // original[i] = vertex of the host for new id i
};

/// G[U] relabelled 0..|U|-1 in ascending order of the original ids.
inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> subset) {
  std::vector<Vertex> original(subset.begin(), subset.end());
  std::sort(original.begin(), original.end());
  original.erase(std::unique(original.begin(), original.end()), original.end());
  std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < original.size(); ++i) {
    const Vertex v = original[i];
    if (v < 0 || v >= g.num_vertices()) throw InputError("subset vertex out of range");
    local[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::vector<Edge> kept;
  for (const auto& e : g.edges()) {
    const int a = local[static_cast<std::size_t>(e.u)];
    const int b = local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) kept.push_back({a, b});  // order preserved by monotone relabelling
  }
  return {Graph(static_cast<int>(original.size()), std::move(kept)), std::move(original)};
}

/// Weighted version: G[U] carrying the host weights.
inline WeightedGraph induced_weighted(const WeightedGraph& wg, const InducedSubgraph& sub) {
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(sub.graph.num_edges()));
  for (const auto& e : sub.graph.edges()) {
    const auto id = wg.graph().edge_id(sub.original[static_cast<std::size_t>(e.u)],
                                       sub.original[static_cast<std::size_t>(e.v)]);
    w.push_back(wg.weight(*id));
  }
  return WeightedGraph(sub.graph, std::move(w));
}

}  // namespace cfl

#endif  // CFL_GRAPH_HPP
