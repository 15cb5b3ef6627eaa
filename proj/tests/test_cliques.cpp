#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "cfl/cliques.hpp"
#include "cfl/gen.hpp"
#include "cfl/rng.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace cfl;

namespace {

std::vector<std::vector<int>> as_tuples(const CliqueSet& s) {
  std::vector<std::vector<int>> out;
  for (CliqueId id = 0; id < s.size(); ++id) {
    const auto c = s.clique(id);
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

Graph empty_graph(int n) { return Graph::from_edge_list(n, {}); }

std::vector<Vertex> all_vertices(int n) {
  std::vector<Vertex> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

}  // namespace

TEST(EnumerateCliques, Examples) {
  EXPECT_EQ(enumerate_cliques(gen_complete(6), 3).size(), 20);
  EXPECT_EQ(enumerate_cliques(petersen(), 3).size(), 0);
  EXPECT_EQ(enumerate_cliques(gen_paley(13), 3).size(), oracle::frozen::paley13_triangles);
  EXPECT_EQ(oracle::triangles_by_edges(gen_paley(13)), oracle::frozen::paley13_triangles);
}

TEST(EnumerateCliques, RejectsSmallT) { EXPECT_THROW(enumerate_cliques(gen_complete(4), 1), InputError); }

TEST(EnumerateCliques, MatchesBruteForceOnCorpus) {
  for (const auto& g : corpus::regular_graphs()) {
    if (g.num_vertices() > 25) continue;
    for (const int t : {2, 3, 4}) {
      const auto s = enumerate_cliques(g, t);
      EXPECT_EQ(as_tuples(s), oracle::all_tuples_cliques(g, t)) << "n=" << g.num_vertices() << " t=" << t;
      EXPECT_EQ(count_cliques(g, t), s.size());
    }
  }
}

TEST(EnumerateCliques, TrianglesMatchEdgeOracle) {
  for (const auto& g : corpus::regular_graphs()) {
    EXPECT_EQ(count_cliques(g, 3), oracle::triangles_by_edges(g)) << g.num_vertices();
  }
}

TEST(EnumerateCliques, IndexesAreConsistent) {
  for (const auto& g : corpus::regular_graphs()) {
    if (g.num_vertices() > 40) continue;
    const int t = 3;
    const auto s = enumerate_cliques(g, t);
    std::size_t pair_total = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto [u, v] = g.edge(e);
      const auto& list = s.containing_edge(e);
      pair_total += list.size();
      std::set<CliqueId> listed(list.begin(), list.end());
      EXPECT_EQ(listed.size(), list.size());
      for (CliqueId id = 0; id < s.size(); ++id) {
        const auto c = s.clique(id);
        const bool both = std::find(c.begin(), c.end(), u) != c.end() && std::find(c.begin(), c.end(), v) != c.end();
        EXPECT_EQ(both, listed.count(id) == 1);
      }
    }
    EXPECT_EQ(pair_total, static_cast<std::size_t>(s.size()) * 3);
    std::size_t vertex_total = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      for (const CliqueId id : s.containing(v)) {
        const auto c = s.clique(id);
        EXPECT_NE(std::find(c.begin(), c.end(), v), c.end());
      }
      vertex_total += s.containing(v).size();
    }
    EXPECT_EQ(vertex_total, static_cast<std::size_t>(s.size()) * t);
    for (CliqueId id = 0; id < s.size(); ++id) {
      const auto c = s.clique(id);
      EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
      EXPECT_EQ(s.find(c), id);
      const auto edges = s.clique_edges(id);
      EXPECT_EQ(edges[0], *g.edge_id(c[0], c[1]));
      EXPECT_EQ(edges[1], *g.edge_id(c[0], c[2]));
      EXPECT_EQ(edges[2], *g.edge_id(c[1], c[2]));
    }
  }
}

TEST(CliqueWindow, CompleteSixEdges) {
  const Graph k6 = gen_complete(6);
  const auto w = count_cliques_window(k6, empty_graph(6), all_vertices(6), 2);
  EXPECT_EQ(w.count, 15);
  EXPECT_NEAR(w.lower, 0.9375, 1e-12);
  EXPECT_NEAR(w.upper, 240.0, 1e-9);
  EXPECT_TRUE(w.within);
}

TEST(CliqueWindow, RandomRegularEdges) {
  const Graph g = gen_random_regular(100, 50, 5);
  const auto w = count_cliques_window(g, empty_graph(100), all_vertices(100), 2);
  EXPECT_EQ(w.count, 2500);
  EXPECT_NEAR(w.lower, 156.25, 1e-9);
  EXPECT_NEAR(w.upper, 40000.0, 1e-6);
  EXPECT_TRUE(w.within);
}

TEST(CliqueWindow, PetersenTrianglesOutside) {
  const auto w = count_cliques_window(petersen(), empty_graph(10), all_vertices(10), 3);
  EXPECT_EQ(w.count, 0);
  EXPECT_GT(w.lower, 0.0);
  EXPECT_FALSE(w.within);
}

TEST(CliqueWindow, RemovedEdgesAreExcluded) {
  const Graph k6 = gen_complete(6);
  const Graph gp = Graph::from_edge_list(6, {{0, 1}, {2, 3}});
  EXPECT_EQ(count_cliques_window(k6, gp, all_vertices(6), 2).count, 13);
  EXPECT_EQ(count_cliques_window(k6, gp, all_vertices(6), 3).count, 20 - 4 - 4);
}

TEST(CliqueWindow, Errors) {
  EXPECT_THROW(count_cliques_window(gen_complete(6), empty_graph(6), all_vertices(6), 1), InputError);
  const Graph path = Graph::from_edge_list(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(count_cliques_window(path, empty_graph(3), all_vertices(3), 2), InputError);
}

TEST(VertexFamily, Examples) {
  const auto k6 = vertex_family(gen_complete(6), empty_graph(6), 0, 3, 2);
  ASSERT_EQ(k6.cliques.size(), 2u);
  std::set<Vertex> used;
  for (const auto& c : k6.cliques)
    for (const Vertex x : c)
      if (x != 0) used.insert(x);
  EXPECT_EQ(used.size(), 4u);

  EXPECT_TRUE(vertex_family(petersen(), empty_graph(10), 4, 3, 1).cliques.empty());

  const auto k7 = vertex_family(gen_complete(7), empty_graph(7), 0, 3, 3);
  EXPECT_EQ(k7.cliques.size(), 3u);
  EXPECT_THROW(vertex_family(gen_complete(7), empty_graph(7), 0, 2, 3), InputError);
}

TEST(VertexFamily, PairwiseMeetOnlyAtV) {
  for (const auto& g : corpus::regular_graphs()) {
    for (const int t : {3, 4}) {
      for (Vertex v = 0; v < std::min(g.num_vertices(), 6); ++v) {
        const auto fam = vertex_family(g, empty_graph(g.num_vertices()), v, t, g.num_vertices());
        for (std::size_t i = 0; i < fam.cliques.size(); ++i) {
          const auto& a = fam.cliques[i];
          EXPECT_EQ(static_cast<int>(a.size()), t);
          EXPECT_NE(std::find(a.begin(), a.end(), v), a.end());
          for (std::size_t x = 0; x < a.size(); ++x)
            for (std::size_t y = x + 1; y < a.size(); ++y) EXPECT_TRUE(g.has_edge(a[x], a[y]));
          for (std::size_t j = i + 1; j < fam.cliques.size(); ++j) {
            std::vector<Vertex> common;
            std::set_intersection(a.begin(), a.end(), fam.cliques[j].begin(), fam.cliques[j].end(),
                                  std::back_inserter(common));
            EXPECT_EQ(common, std::vector<Vertex>{v});
          }
        }
      }
    }
  }
}

TEST(VertexFamily, CompleteGraphReachesPairingTarget) {
  for (int n = 4; n <= 15; ++n) {
    const auto fam = vertex_family(gen_complete(n), empty_graph(n), 0, 3, (n - 1) / 2);
    EXPECT_EQ(static_cast<int>(fam.cliques.size()), (n - 1) / 2) << n;
  }
}

TEST(PropertyP, Examples) {
  const auto k30 = property_P_audit(gen_complete(30), 3, 6, 6, 50, 1);
  EXPECT_EQ(k30.failures, 0);
  EXPECT_EQ(k30.required, 3);
  EXPECT_EQ(k30.u0_size, 2);
  EXPECT_GE(k30.min_family, 3);

  const auto pet = property_P_audit(petersen(), 3, 3, 2, 20, 1);
  EXPECT_EQ(pet.failures, 20);
  ASSERT_TRUE(pet.witness.has_value());

  EXPECT_EQ(property_P_audit(petersen(), 3, 4, 0, 20, 1).failures, 0);
  EXPECT_THROW(property_P_audit(petersen(), 2, 4, 0, 1, 1), InputError);
  EXPECT_THROW(property_P_audit(petersen(), 3, 11, 0, 1, 1), InputError);
}

TEST(PropertyP, FamilySatisfiesConditions) {
  // Direct construction oracle: check (1)-(3) on every returned family.
  const Graph g = gen_random_regular(40, 20, 11);
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto u = rng.subset(40, 32);
    std::vector<Vertex> u0;
    for (const int idx : rng.subset(32, 3)) u0.push_back(u[static_cast<std::size_t>(idx)]);
    std::sort(u0.begin(), u0.end());
    const auto fam = property_family(g, 3, u, u0, 100);
    std::set<Vertex> outside_u0;
    for (const auto& c : fam) {
      int hits = 0;
      for (const Vertex x : c) {
        EXPECT_TRUE(std::binary_search(u.begin(), u.end(), x));
        if (std::binary_search(u0.begin(), u0.end(), x)) {
          ++hits;
        } else {
          EXPECT_TRUE(outside_u0.insert(x).second);
        }
      }
      EXPECT_EQ(hits, 1);
      for (std::size_t x = 0; x < c.size(); ++x)
        for (std::size_t y = x + 1; y < c.size(); ++y) EXPECT_TRUE(g.has_edge(c[x], c[y]));
    }
  }
}

TEST(SpanAudit, Examples) {
  EXPECT_EQ(span_clique_audit(gen_complete(60), 3, 3, 50, 1).failures, 0);
  EXPECT_EQ(span_clique_audit(petersen(), 3, 10, 15, 1).failures, 15);
  EXPECT_EQ(span_clique_audit(gen_complete(60), 3, 2, 15, 1).failures, 15);
  EXPECT_THROW(span_clique_audit(petersen(), 3, 11, 1, 1), InputError);
}

TEST(SpanAudit, DefaultSizeRoundsUp) {
  EXPECT_EQ(default_span_size(60, 3), 3);
  EXPECT_EQ(default_span_size(300, 3), 11);
  EXPECT_EQ(default_span_size(100, 4), 3);
}
