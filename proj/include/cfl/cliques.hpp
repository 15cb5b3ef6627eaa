#ifndef CFL_CLIQUES_HPP
#define CFL_CLIQUES_HPP

// K_t enumeration and the clique-structure audits: counting windows in
// induced subgraphs, vertex-local families T_v, property P(t, D, D', n) and
// "every s vertices span a K_t".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "cfl/error.hpp"
#include "cfl/graph.hpp"
#include "cfl/rng.hpp"

namespace cfl {

using CliqueId = int;

/// All copies of K_t in a host graph, as strictly increasing vertex tuples
/// in lexicographic order. Tuples are stored flat with stride t.
class CliqueSet {
 public:
  CliqueSet() = default;
  CliqueSet(int t, int num_vertices, int num_edges) : t_(t), by_vertex_(num_vertices), by_pair_(num_edges) {}

  int t() const { return t_; }
  int size() const { return t_ == 0 ? 0 : static_cast<int>(flat_.size() / static_cast<std::size_t>(t_)); }
  bool empty() const { return flat_.empty(); }
  int host_vertices() const { return static_cast<int>(by_vertex_.size()); }
  int host_edges() const { return static_cast<int>(by_pair_.size()); }

  std::span<const Vertex> clique(CliqueId id) const {
    return {flat_.data() + static_cast<std::size_t>(id) * static_cast<std::size_t>(t_),
            static_cast<std::size_t>(t_)};
  }
  /// Cliques containing v.
  const std::vector<CliqueId>& containing(Vertex v) const { return by_vertex_[static_cast<std::size_t>(v)]; }
  /// Cliques containing both endpoints of host edge e.
  const std::vector<CliqueId>& containing_edge(EdgeId e) const { return by_pair_[static_cast<std::size_t>(e)]; }
  /// Host edge ids of a clique, C(t,2) of them, in (i<j) position order.
  std::span<const EdgeId> clique_edges(CliqueId id) const {
    const std::size_t k = static_cast<std::size_t>(t_) * static_cast<std::size_t>(t_ - 1) / 2;
    return {edge_flat_.data() + static_cast<std::size_t>(id) * k, k};
  }

  /// Id of a sorted tuple, if it is one of the cliques.
  std::optional<CliqueId> find(std::span<const Vertex> tuple) const {
    if (static_cast<int>(tuple.size()) != t_) return std::nullopt;
    int lo = 0, hi = size();
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      const auto c = clique(mid);
      if (std::lexicographical_compare(c.begin(), c.end(), tuple.begin(), tuple.end())) lo = mid + 1;
      else hi = mid;
    }
    if (lo < size() && std::equal(tuple.begin(), tuple.end(), clique(lo).begin())) return lo;
    return std::nullopt;
  }

  void add(const Graph& host, std::span<const Vertex> tuple) {
    const CliqueId id = size();
    flat_.insert(flat_.end(), tuple.begin(), tuple.end());
    for (const Vertex v : tuple) by_vertex_[static_cast<std::size_t>(v)].push_back(id);
    for (std::size_t i = 0; i < tuple.size(); ++i)
      for (std::size_t j = i + 1; j < tuple.size(); ++j) {
        const EdgeId e = *host.edge_id(tuple[i], tuple[j]);
        edge_flat_.push_back(e);
        by_pair_[static_cast<std::size_t>(e)].push_back(id);
      }
  }

 private:
  int t_ = 0;
  std::vector<Vertex> flat_;
  std::vector<EdgeId> edge_flat_;
  std::vector<std::vector<CliqueId>> by_vertex_;
  std::vector<std::vector<CliqueId>> by_pair_;
};

namespace clique_detail {

/// Sorted intersection of a sorted candidate list with N(v), keeping
/// only vertices greater than v.
inline std::vector<Vertex> extend(const Graph& g, std::span<const Vertex> candidates, Vertex v) {
  std::vector<Vertex> out;
  const auto nb = g.neighbors(v);
  auto it = std::upper_bound(candidates.begin(), candidates.end(), v);
  std::set_intersection(it, candidates.end(), nb.begin(), nb.end(), std::back_inserter(out));
  return out;
}

template <typename Visit>
void expand(const Graph& g, std::vector<Vertex>& stack, std::span<const Vertex> candidates, int remaining,
            Visit& visit) {
  if (remaining == 0) {
    visit(std::span<const Vertex>(stack));
    return;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates.size() - i < static_cast<std::size_t>(remaining)) break;
    const Vertex v = candidates[i];
    stack.push_back(v);
    if (remaining == 1) {
      visit(std::span<const Vertex>(stack));
    } else {
      const auto next = extend(g, candidates.subspan(i + 1), v);
      expand(g, stack, next, remaining - 1, visit);
    }
    stack.pop_back();
  }
}

/// Calls visit(tuple) for every K_t of g in lexicographic order.
template <typename Visit>
void for_each_clique(const Graph& g, int t, Visit&& visit) {
  if (t < 1) return;
  std::vector<Vertex> all(static_cast<std::size_t>(g.num_vertices()));
  std::iota(all.begin(), all.end(), 0);
  std::vector<Vertex> stack;
  expand(g, stack, all, t, visit);
}

/// First K_k (lexicographic) inside a sorted candidate list.
inline std::optional<std::vector<Vertex>> first_clique(const Graph& g, std::span<const Vertex> candidates, int k) {
  if (k <= 0) return std::vector<Vertex>{};
  std::vector<Vertex> stack;
  std::optional<std::vector<Vertex>> found;
  // Depth-first with early exit.
  auto search = [&](auto&& self, std::span<const Vertex> cand, int remaining) -> bool {
    if (remaining == 0) {
      found = stack;
      return true;
    }
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (cand.size() - i < static_cast<std::size_t>(remaining)) return false;
      stack.push_back(cand[i]);
      const auto next = remaining > 1 ? extend(g, cand.subspan(i + 1), cand[i]) : std::vector<Vertex>{};
      if (self(self, next, remaining - 1)) return true;
      stack.pop_back();
    }
    return false;
  };
  search(search, candidates, k);
  return found;
}

}  // namespace clique_detail

inline CliqueSet enumerate_cliques(const Graph& g, int t) {
  if (t < 2) throw InputError("clique order t must be at least 2");
  CliqueSet set(t, g.num_vertices(), g.num_edges());
  clique_detail::for_each_clique(g, t, [&](std::span<const Vertex> tuple) { set.add(g, tuple); });
  return set;
}

inline long count_cliques(const Graph& g, int t) {
  if (t < 1) throw InputError("clique order must be positive");
  long count = 0;
  clique_detail::for_each_clique(g, t, [&](std::span<const Vertex>) { ++count; });
  return count;
}

struct CliqueWindow {
  long count = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool within = false;
  double ratio = 0.0;  // count / (|U|^i (d/n)^{C(i,2)} / i!)
};

/// Number of K_i in (g \ gprime)[U] against 2^{-+i^2} |U|^i (d/n)^{C(i,2)} / i!.
/// Only evaluates the window; whether its hypotheses hold is the caller's
/// concern.
inline CliqueWindow count_cliques_window(const Graph& g, const Graph& gprime, std::span<const Vertex> subset,
                                         int i) {
  if (i < 2) throw InputError("window check needs i >= 2");
  const auto reg = regularity(g);
  if (!reg.is_regular) throw InputError("window check needs a regular host graph");
  const Graph host = graph_difference(g, gprime);
  const auto sub = induced_subgraph(host, subset);
  CliqueWindow w;
  w.count = count_cliques(sub.graph, i);
  const double u = static_cast<double>(sub.original.size());
  const double p = g.num_vertices() > 0 ? static_cast<double>(reg.d) / g.num_vertices() : 0.0;
  const double factorial = std::tgamma(i + 1.0);
  const double central = std::pow(u, i) * std::pow(p, i * (i - 1) / 2.0) / factorial;
  w.lower = central * std::pow(2.0, -static_cast<double>(i * i));
  w.upper = central * std::pow(2.0, static_cast<double>(i * i));
  w.within = w.lower <= static_cast<double>(w.count) && static_cast<double>(w.count) <= w.upper;
  w.ratio = central > 0 ? static_cast<double>(w.count) / central : 0.0;
  return w;
}

/// Family of K_t copies through v that pairwise meet only in v.
struct VertexFamily {
  Vertex v = 0;
  std::vector<std::vector<Vertex>> cliques;
};

/// First-fit construction over the sorted neighborhood of v in
/// g \ gprime: repeatedly take the lexicographically first K_{t-1} among
/// unused neighbors. Stops at `target` or when none is left.
inline VertexFamily vertex_family(const Graph& g, const Graph& gprime, Vertex v, int t, int target) {
  if (t < 3) throw InputError("vertex_family needs t >= 3");
  const Graph host = gprime.num_edges() == 0 ? g : graph_difference(g, gprime);
  VertexFamily fam;
  fam.v = v;
  std::vector<Vertex> free(host.neighbors(v).begin(), host.neighbors(v).end());
  while (static_cast<int>(fam.cliques.size()) < target) {
    auto found = clique_detail::first_clique(host, free, t - 1);
    if (!found) break;
    std::vector<Vertex> clique = *found;
    std::vector<Vertex> rest;
    std::set_difference(free.begin(), free.end(), clique.begin(), clique.end(), std::back_inserter(rest));
    free = std::move(rest);
    clique.push_back(v);
    std::sort(clique.begin(), clique.end());
    fam.cliques.push_back(std::move(clique));
  }
  return fam;
}

struct PropertyPWitness {
  std::vector<Vertex> u;
  std::vector<Vertex> u0;
  int family_size = 0;
};

struct PropertyPReport {
  int t = 0;
  int D = 0;
  int Dprime = 0;
  int n = 0;
  int u0_size = 0;   // floor(D / t)
  int required = 0;  // floor(D' / (t-1))
  long trials = 0;
  long failures = 0;
  int min_family = 0;
  std::optional<PropertyPWitness> witness;
};

/// Greedy T_0 for one (U, U_0): each clique lies in U, meets U_0 in
/// exactly one vertex, and distinct cliques share only U_0 vertices.
inline std::vector<std::vector<Vertex>> property_family(const Graph& g, int t, std::span<const Vertex> u,
                                                        std::span<const Vertex> u0, int stop_at) {
  const int n = g.num_vertices();
  std::vector<char> available(static_cast<std::size_t>(n), 0);
  for (const Vertex x : u) available[static_cast<std::size_t>(x)] = 1;
  for (const Vertex x : u0) available[static_cast<std::size_t>(x)] = 0;
  std::vector<std::vector<Vertex>> family;
  for (const Vertex root : u0) {
    while (static_cast<int>(family.size()) < stop_at) {
      std::vector<Vertex> cand;
      for (const Vertex x : g.neighbors(root))
        if (available[static_cast<std::size_t>(x)]) cand.push_back(x);
      auto found = clique_detail::first_clique(g, cand, t - 1);
      if (!found) break;
      for (const Vertex x : *found) available[static_cast<std::size_t>(x)] = 0;
      std::vector<Vertex> clique = *found;
      clique.push_back(root);
      std::sort(clique.begin(), clique.end());
      family.push_back(std::move(clique));
    }
    if (static_cast<int>(family.size()) >= stop_at) break;
  }
  return family;
}

/// Randomized audit of property P(t, D, D', n): `trials` samples of
/// |U| = n - D and |U_0| = floor(D/t), each checked by the greedy family.
inline PropertyPReport property_P_audit(const Graph& g, int t, int D, int Dprime, long trials, std::uint64_t seed) {
  const int n = g.num_vertices();
  if (t < 3) throw InputError("property P needs t >= 3");
  if (D < 0 || D > n || Dprime < 0) throw InputError("property P needs 0 <= D <= n and D' >= 0");
  PropertyPReport r;
  r.t = t;
  r.D = D;
  r.Dprime = Dprime;
  r.n = n;
  r.u0_size = D / t;
  r.required = Dprime / (t - 1);
  r.trials = trials;
  r.min_family = std::numeric_limits<int>::max();
  for (long k = 0; k < trials; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const auto u = rng.subset(n, n - D);
    const auto pick = rng.subset(static_cast<int>(u.size()), std::min<int>(r.u0_size, static_cast<int>(u.size())));
    std::vector<Vertex> u0;
    for (const int idx : pick) u0.push_back(u[static_cast<std::size_t>(idx)]);
    const int size = r.required == 0 ? 0 : static_cast<int>(property_family(g, t, u, u0, r.required).size());
    r.min_family = std::min(r.min_family, size);
    if (size < r.required) {
      ++r.failures;
      if (!r.witness) r.witness = PropertyPWitness{u, u0, size};
    }
  }
  if (trials == 0) r.min_family = 0;
  return r;
}

struct SpanAuditReport {
  int t = 0;
  int size = 0;
  long trials = 0;
  long failures = 0;
  std::optional<std::vector<Vertex>> witness;
};

/// Default subset size for "every 0.11 n / t vertices span a K_t",
/// rounded up.
inline int default_span_size(int n, int t) {
  return static_cast<int>(std::ceil(0.11 * n / t - 1e-12));
}

inline SpanAuditReport span_clique_audit(const Graph& g, int t, int size, long trials, std::uint64_t seed) {
  const int n = g.num_vertices();
  if (size < 0 || size > n) throw InputError("span audit size must lie in [0, n]");
  SpanAuditReport r;
  r.t = t;
  r.size = size;
  r.trials = trials;
  for (long k = 0; k < trials; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const auto s = rng.subset(n, size);
    const bool spans = size >= t && clique_detail::first_clique(g, s, t).has_value();
    if (!spans) {
      ++r.failures;
      if (!r.witness) r.witness = s;
    }
  }
  return r;
}

}  // namespace cfl

#endif  // CFL_CLIQUES_HPP
