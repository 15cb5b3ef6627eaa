#ifndef CFL_GEN_HPP
#define CFL_GEN_HPP

// Seeded generators for candidate (n, d, lambda) instances.

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "cfl/error.hpp"
#include "cfl/graph.hpp"
#include "cfl/rng.hpp"

namespace cfl {

enum class GenKind { complete, paley, circulant, random_regular };

inline std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::complete: return "complete";
    case GenKind::paley: return "paley";
    case GenKind::circulant: return "circulant";
    case GenKind::random_regular: return "random_regular";
  }
  return "?";
}

struct GenSpec {
  GenKind kind = GenKind::complete;
  int n = 0;
  int d = 0;
  int q = 0;
  std::vector<int> connection_set;
  std::uint64_t seed = 0;
};

inline Graph gen_complete(int n) {
  if (n < 1) throw InputError("complete graph needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int p = 2; static_cast<long>(p) * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

/// Paley graph on Z_q: u ~ v iff u - v is a nonzero square mod q.
inline Graph gen_paley(int q) {
  if (!is_prime(q) || q % 4 != 1)
    throw InputError("paley needs a prime q = 1 (mod 4), got " + std::to_string(q));
  std::vector<char> square(static_cast<std::size_t>(q), 0);
  for (long x = 1; x < q; ++x) square[static_cast<std::size_t>((x * x) % q)] = 1;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < q; ++u)
    for (Vertex v = u + 1; v < q; ++v)
      if (square[static_cast<std::size_t>(v - u)]) edges.push_back({u, v});
  return Graph(q, std::move(edges));
}

inline Graph gen_circulant(int n, const std::vector<int>& offsets) {
  if (n < 1) throw InputError("circulant needs n >= 1");
  std::vector<Edge> edges;
  for (const int s : offsets) {
    if (s < 1 || 2 * s > n)
      throw InputError("circulant offset " + std::to_string(s) + " outside [1, n/2]");
    for (Vertex u = 0; u < n; ++u) {
      const Vertex v = (u + s) % n;
      edges.push_back({std::min(u, v), std::max(u, v)});
    }
  }
  return Graph(n, std::move(edges));
}

inline constexpr long kMaxPairingRestarts = 100000;

/// Simple d-regular graph from the pairing (configuration) model.
///
/// Points are matched one pair at a time, each pair drawn uniformly from
/// the remaining points; a pair that would create a loop or a repeated
/// edge is redrawn, and the whole pairing restarts when no legal pair is
/// left.
inline Graph gen_random_regular(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n) throw InputError("random_regular needs 0 <= d < n");
  if ((static_cast<long>(n) * d) % 2 != 0) throw InputError("random_regular needs n*d even");
  Rng rng(seed);
  const auto key = [n](Vertex a, Vertex b) {
    return static_cast<std::uint64_t>(std::min(a, b)) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(std::max(a, b));
  };
  for (long attempt = 0; attempt <= kMaxPairingRestarts; ++attempt) {
    std::vector<Vertex> points;
    points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (Vertex v = 0; v < n; ++v)
      for (int k = 0; k < d; ++k) points.push_back(v);
    std::unordered_set<std::uint64_t> used;
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool placed = false;
      // Rejection sampling first; fall back to an exhaustive scan to
      // decide whether any legal pair remains.
      for (int tries = 0; tries < 64 && !placed; ++tries) {
        const std::size_t i = rng.below(points.size());
        std::size_t j = rng.below(points.size() - 1);
        if (j >= i) ++j;
        const Vertex a = points[i], b = points[j];
        if (a == b || used.count(key(a, b))) continue;
        used.insert(key(a, b));
        edges.push_back({std::min(a, b), std::max(a, b)});
        const std::size_t hi = std::max(i, j), lo = std::min(i, j);
        points[hi] = points.back();
        points.pop_back();
        points[lo] = points.back();
        points.pop_back();
        placed = true;
      }
      if (placed) continue;
      std::vector<std::pair<std::size_t, std::size_t>> legal;
      for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
          if (points[i] != points[j] && !used.count(key(points[i], points[j])))
            legal.emplace_back(i, j);
      if (legal.empty()) {
        stuck = true;
        break;
      }
      const auto [i, j] = legal[rng.below(legal.size())];
      const Vertex a = points[i], b = points[j];
      used.insert(key(a, b));
      edges.push_back({std::min(a, b), std::max(a, b)});
      points[j] = points.back();
      points.pop_back();
      points[i] = points.back();
      points.pop_back();
    }
    if (!stuck) return Graph(n, std::move(edges));
  }
  throw ResourceError("random_regular: pairing failed after " +
                      std::to_string(kMaxPairingRestarts) + " restarts");
}

inline Graph generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::complete: return gen_complete(spec.n);
    case GenKind::paley: return gen_paley(spec.q);
    case GenKind::circulant: return gen_circulant(spec.n, spec.connection_set);
    case GenKind::random_regular: return gen_random_regular(spec.n, spec.d, spec.seed);
  }
  throw InputError("unknown generator kind");
}

/// The Petersen graph: outer 5-cycle 0..4, spokes i -- i+5, inner
/// pentagram on 5..9.
inline Graph petersen() {
  return Graph::from_edge_list(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                                    {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                                    {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
}

}  // namespace cfl

#endif  // CFL_GEN_HPP
