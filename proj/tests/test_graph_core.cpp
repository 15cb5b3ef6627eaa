#include <gtest/gtest.h>

#include <numeric>
#include <sstream>
#include <vector>

#include "cfl/gen.hpp"
#include "cfl/graph.hpp"
#include "cfl/graph_io.hpp"
#include "cfl/rng.hpp"
#include "corpus.hpp"

using namespace cfl;

namespace {

Graph triangle() { return Graph::from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}}); }

WeightedGraph weighted_triangle(double w01, double w12, double w02) {
  const Graph g = triangle();
  std::vector<double> w(3);
  w[static_cast<std::size_t>(*g.edge_id(0, 1))] = w01;
  w[static_cast<std::size_t>(*g.edge_id(1, 2))] = w12;
  w[static_cast<std::size_t>(*g.edge_id(0, 2))] = w02;
  return WeightedGraph(g, w);
}

}  // namespace

TEST(FromEdgeList, Triangle) {
  const Graph g = triangle();
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_EQ(g.num_edges(), 3);
}

TEST(FromEdgeList, EmptyGraph) {
  const Graph g = Graph::from_edge_list(4, {});
  EXPECT_EQ(g.num_edges(), 0);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(g.degree(v), 0);
}

TEST(FromEdgeList, CompleteSix) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) pairs.emplace_back(u, v);
  const Graph g = Graph::from_edge_list(6, pairs);
  EXPECT_EQ(g.num_edges(), 15);
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(g.degree(v), 5);
}

TEST(FromEdgeList, DeduplicatesAndSortsAdjacency) {
  const Graph g = Graph::from_edge_list(4, {{3, 0}, {0, 3}, {2, 0}, {0, 1}});
  EXPECT_EQ(g.num_edges(), 3);
  const auto nb = g.neighbors(0);
  EXPECT_EQ(std::vector<Vertex>(nb.begin(), nb.end()), (std::vector<Vertex>{1, 2, 3}));
}

TEST(FromEdgeList, RejectsOutOfRange) {
  EXPECT_THROW(Graph::from_edge_list(3, {{0, 3}}), InputError);
  EXPECT_THROW(Graph::from_edge_list(3, {{-1, 2}}), InputError);
}

TEST(FromEdgeList, RejectsSelfLoop) { EXPECT_THROW(Graph::from_edge_list(3, {{1, 1}}), InputError); }

TEST(Regularity, CompleteSix) {
  const auto r = regularity(gen_complete(6));
  EXPECT_TRUE(r.is_regular);
  EXPECT_EQ(r.d, 5);
}

TEST(Regularity, Petersen) {
  const auto r = regularity(petersen());
  EXPECT_TRUE(r.is_regular);
  EXPECT_EQ(r.d, 3);
}

TEST(Regularity, Path) {
  const auto r = regularity(Graph::from_edge_list(3, {{0, 1}, {1, 2}}));
  EXPECT_FALSE(r.is_regular);
  EXPECT_EQ(r.min_deg, 1);
  EXPECT_EQ(r.max_deg, 2);
}

TEST(WeightedDegree, UniformWeights) {
  EXPECT_DOUBLE_EQ(weighted_degree(WeightedGraph::uniform(gen_complete(6), 1.0), 3), 5.0);
  EXPECT_DOUBLE_EQ(weighted_degree(WeightedGraph::uniform(gen_complete(6), 0.5), 0), 2.5);
}

TEST(WeightedDegree, DirectSum) { EXPECT_DOUBLE_EQ(weighted_degree(weighted_triangle(1.0, 0.3, 0.2), 1), 1.3); }

TEST(WeightedGraph, RejectsBadWeights) {
  EXPECT_THROW(WeightedGraph(triangle(), {0.5, 1.5, 0.1}), InputError);
  EXPECT_THROW(WeightedGraph(triangle(), {0.5, -0.1, 0.1}), InputError);
  EXPECT_THROW(WeightedGraph(triangle(), {0.5, 0.5}), InputError);
}

TEST(RichSubgraph, AllRichAtZero) {
  const auto wg = WeightedGraph::uniform(gen_complete(5), 1.0);
  EXPECT_EQ(rich_subgraph(wg, 0.0), wg.graph());
}

TEST(RichSubgraph, NoneRich) {
  EXPECT_EQ(rich_subgraph(WeightedGraph::uniform(gen_complete(5), 0.5), 0.4).num_edges(), 0);
}

TEST(RichSubgraph, Threshold) {
  const Graph h = rich_subgraph(weighted_triangle(1.0, 0.95, 0.5), 0.1);
  EXPECT_EQ(h.num_edges(), 2);
  EXPECT_TRUE(h.has_edge(0, 1));
  EXPECT_TRUE(h.has_edge(1, 2));
}

TEST(RichSubgraph, AbsorbsRounding) {
  // 1 - 0.1 computed by subtraction sits a few ulps away from 0.9.
  const Graph h = rich_subgraph(weighted_triangle(1.0 - 0.1, 0.3, 0.2), 0.1);
  EXPECT_TRUE(h.has_edge(0, 1));
}

TEST(RichSubgraph, RejectsAlpha) {
  const auto wg = WeightedGraph::uniform(triangle(), 1.0);
  EXPECT_THROW(rich_subgraph(wg, -0.1), InputError);
  EXPECT_THROW(rich_subgraph(wg, 1.1), InputError);
}

TEST(GraphDifference, CompleteFourMinusMatching) {
  const Graph c4 = graph_difference(gen_complete(4), Graph::from_edge_list(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(c4.num_edges(), 4);
  EXPECT_EQ(regularity(c4).d, 2);
  EXPECT_FALSE(c4.has_edge(0, 1));
}

TEST(GraphDifference, Identities) {
  const Graph g = petersen();
  EXPECT_EQ(graph_difference(g, Graph(10, {})), g);
  EXPECT_EQ(graph_difference(g, g).num_edges(), 0);
}

TEST(GraphDifference, RejectsMismatchedSizes) {
  EXPECT_THROW(graph_difference(gen_complete(4), gen_complete(5)), InputError);
}

TEST(InducedSubgraph, CliqueIsHereditary) {
  const std::vector<Vertex> u{1, 3, 5};
  const auto sub = induced_subgraph(gen_complete(6), u);
  EXPECT_EQ(sub.graph, gen_complete(3));
  EXPECT_EQ(sub.original, u);
}

TEST(InducedSubgraph, PetersenOuterCycle) {
  const std::vector<Vertex> outer{0, 1, 2, 3, 4};
  const auto sub = induced_subgraph(petersen(), outer);
  EXPECT_EQ(sub.graph.num_edges(), 5);
  EXPECT_TRUE(regularity(sub.graph).is_regular);
  EXPECT_EQ(regularity(sub.graph).d, 2);
}

TEST(InducedSubgraph, EmptySubset) {
  const auto sub = induced_subgraph(petersen(), std::vector<Vertex>{});
  EXPECT_EQ(sub.graph.num_vertices(), 0);
  EXPECT_EQ(sub.graph.num_edges(), 0);
}

TEST(InducedSubgraph, CarriesWeights) {
  const auto wg = weighted_triangle(1.0, 0.3, 0.2);
  const auto sub = induced_subgraph(wg.graph(), std::vector<Vertex>{1, 2});
  const auto sw = induced_weighted(wg, sub);
  ASSERT_EQ(sw.num_edges(), 1);
  EXPECT_DOUBLE_EQ(sw.weight(0), 0.3);
}

TEST(GraphProperties, HandshakeAndSymmetry) {
  for (const auto& g : corpus::regular_graphs()) {
    long sum = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      sum += g.degree(v);
      for (const Vertex u : g.neighbors(v)) EXPECT_TRUE(g.has_edge(u, v));
    }
    EXPECT_EQ(sum, 2L * g.num_edges());
  }
}

TEST(GraphProperties, RichSubgraphAtOneKeepsEveryEdge) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto wg = corpus::random_weights(gen_random_regular(20, 6, seed), seed);
    EXPECT_EQ(rich_subgraph(wg, 1.0), wg.graph());
  }
}

TEST(GraphProperties, DifferenceAndIntersectionRebuildGraph) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = gen_random_regular(24, 8, seed);
    const Graph g2 = gen_random_regular(24, 6, seed + 100);
    EXPECT_EQ(graph_union(graph_difference(g, g2), graph_intersection(g, g2)), g);
  }
}

// Weighted degrees close to d force many rich edges at each vertex.
TEST(GraphProperties, RichEdgesAtHighWeightedDegree) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int d = 12;
    const Graph g = gen_random_regular(30, d, seed);
    Rng rng(seed);
    const double alpha = 0.1 + 0.3 * rng.uniform();
    // Lower a random edge set while every weighted degree stays >= d(1 - alpha^2).
    std::vector<double> w(static_cast<std::size_t>(g.num_edges()), 1.0);
    std::vector<double> deficit(30, 0.0);
    const double allowed = d * alpha * alpha;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      const double cut = rng.uniform();
      if (deficit[static_cast<std::size_t>(ed.u)] + cut <= allowed && deficit[static_cast<std::size_t>(ed.v)] + cut <= allowed) {
        w[static_cast<std::size_t>(e)] -= cut;
        deficit[static_cast<std::size_t>(ed.u)] += cut;
        deficit[static_cast<std::size_t>(ed.v)] += cut;
      }
    }
    const WeightedGraph wg(g, w);
    const Graph h = rich_subgraph(wg, alpha);
    for (Vertex v = 0; v < 30; ++v) {
      ASSERT_GE(weighted_degree(wg, v), d * (1 - alpha * alpha) - 1e-12);
      EXPECT_GE(h.degree(v), (1 - alpha) * d - 1e-12) << "seed " << seed << " vertex " << v;
    }
  }
}

TEST(GraphIo, RoundTripIsByteIdentical) {
  for (const auto& g : corpus::regular_graphs()) {
    const std::string text = graph_to_string(g);
    EXPECT_EQ(graph_to_string(graph_from_string(text)), text);
  }
}

TEST(GraphIo, WeightedRoundTripIsByteIdentical) {
  const auto wg = corpus::random_weights(gen_paley(13), 3);
  std::ostringstream first;
  write_weighted_graph(first, wg);
  std::istringstream in(first.str());
  const auto back = read_weighted_graph(in);
  EXPECT_EQ(back.weights(), wg.weights());
  std::ostringstream second;
  write_weighted_graph(second, back);
  EXPECT_EQ(second.str(), first.str());
}

TEST(GraphIo, ReadAnyDetectsWeights) {
  std::istringstream plain("3 2\n0 1\n1 2\n");
  EXPECT_DOUBLE_EQ(read_any_graph(plain).weight(0), 1.0);
  std::istringstream weighted("3 2\n0 1 0.25\n1 2 1\n");
  EXPECT_DOUBLE_EQ(read_any_graph(weighted).weight(0), 0.25);
}

TEST(GraphIo, ErrorsCarryLineNumbers) {
  const auto message = [](const std::string& text) {
    try {
      graph_from_string(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("3 2\n0 1\n1 x\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("3 2\n0 1\n2 1\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("3 2\n0 1\n0 1\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("3 2\n0 1\n").find("line"), std::string::npos);
  EXPECT_NE(message("3 1\n0 5\n").find("line 2"), std::string::npos);
  EXPECT_THROW(graph_from_string("x\n"), InputError);
  std::istringstream bad_weight("2 1\n0 1 1.5\n");
  EXPECT_THROW(read_weighted_graph(bad_weight), InputError);
}
