#ifndef CFL_TESTS_CORPUS_HPP
#define CFL_TESTS_CORPUS_HPP

// Named instances shared by the unit tests and the acceptance gate.

#include <cstdint>
#include <string>
#include <vector>

#include "cfl/gen.hpp"
#include "cfl/graph.hpp"
#include "cfl/rng.hpp"

namespace corpus {

struct Instance {
  std::string name;
  cfl::WeightedGraph graph;
};

inline cfl::WeightedGraph random_weights(const cfl::Graph& g, std::uint64_t seed) {
  cfl::Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(g.num_edges()));
  for (auto& x : w) x = rng.uniform();
  return cfl::WeightedGraph(g, std::move(w));
}

/// Weights on a 0.1 grid; ties make the programme degenerate.
inline cfl::WeightedGraph grid_weights(const cfl::Graph& g, std::uint64_t seed) {
  cfl::Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(g.num_edges()));
  for (auto& x : w) x = static_cast<double>(rng.below(11)) / 10.0;
  return cfl::WeightedGraph(g, std::move(w));
}

inline std::vector<cfl::Graph> regular_graphs() {
  std::vector<cfl::Graph> out;
  for (int n = 4; n <= 12; ++n) out.push_back(cfl::gen_complete(n));
  out.push_back(cfl::gen_paley(5));
  out.push_back(cfl::gen_paley(13));
  out.push_back(cfl::gen_paley(17));
  out.push_back(cfl::petersen());
  out.push_back(cfl::gen_circulant(9, {1}));
  out.push_back(cfl::gen_circulant(8, {1, 4}));
  out.push_back(cfl::gen_circulant(12, {1, 2, 3}));
  out.push_back(cfl::gen_random_regular(10, 3, 11));
  out.push_back(cfl::gen_random_regular(20, 6, 12));
  out.push_back(cfl::gen_random_regular(30, 10, 13));
  out.push_back(cfl::gen_random_regular(40, 12, 14));
  out.push_back(cfl::gen_random_regular(60, 20, 15));
  return out;
}

/// The LP corpus: complete graphs, Paley(13), random regular graphs and
/// randomly weighted instances.
inline std::vector<Instance> lp_instances() {
  std::vector<Instance> out;
  for (int n = 4; n <= 12; ++n)
    out.push_back({"K" + std::to_string(n), cfl::WeightedGraph::uniform(cfl::gen_complete(n), 1.0)});
  out.push_back({"Paley(13)", cfl::WeightedGraph::uniform(cfl::gen_paley(13), 1.0)});
  out.push_back({"Petersen", cfl::WeightedGraph::uniform(cfl::petersen(), 1.0)});
  out.push_back({"rr(20,6)", cfl::WeightedGraph::uniform(cfl::gen_random_regular(20, 6, 21), 1.0)});
  out.push_back({"rr(30,10)", cfl::WeightedGraph::uniform(cfl::gen_random_regular(30, 10, 22), 1.0)});
  out.push_back({"rr(60,20)", cfl::WeightedGraph::uniform(cfl::gen_random_regular(60, 20, 23), 1.0)});
  out.push_back({"K6 w=0.5", cfl::WeightedGraph::uniform(cfl::gen_complete(6), 0.5)});
  out.push_back({"K8 random w", random_weights(cfl::gen_complete(8), 31)});
  out.push_back({"K10 grid w", grid_weights(cfl::gen_complete(10), 32)});
  out.push_back({"Paley(13) random w", random_weights(cfl::gen_paley(13), 33)});
  out.push_back({"rr(12,6) random w", random_weights(cfl::gen_random_regular(12, 6, 34), 34)});
  out.push_back({"rr(30,10) random w", random_weights(cfl::gen_random_regular(30, 10, 35), 35)});
  out.push_back({"rr(18,8) grid w", grid_weights(cfl::gen_random_regular(18, 8, 36), 36)});
  return out;
}

}  // namespace corpus

#endif  // CFL_TESTS_CORPUS_HPP
