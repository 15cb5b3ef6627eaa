#include <gtest/gtest.h>

#include <cstdint>
#include <string>

#include "cfl/gen.hpp"
#include "cfl/graph_io.hpp"
#include "oracles.hpp"

using namespace cfl;

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void expect_regular(const Graph& g, int d) {
  const auto r = regularity(g);
  EXPECT_TRUE(r.is_regular);
  EXPECT_EQ(r.d, d);
  EXPECT_EQ(2L * g.num_edges(), static_cast<long>(g.num_vertices()) * d);
}

}  // namespace

TEST(GenComplete, Sizes) {
  EXPECT_EQ(gen_complete(6).num_edges(), 15);
  EXPECT_EQ(gen_complete(1).num_edges(), 0);
  const Graph k12 = gen_complete(12);
  EXPECT_EQ(k12.num_edges(), 66);
  expect_regular(k12, 11);
  EXPECT_THROW(gen_complete(0), InputError);
}

TEST(GenPaley, FiveIsPentagon) {
  const Graph g = gen_paley(5);
  expect_regular(g, 2);
  EXPECT_EQ(g.num_edges(), 5);
  EXPECT_EQ(g, gen_circulant(5, {1}));
}

TEST(GenPaley, Thirteen) {
  const Graph g = gen_paley(13);
  expect_regular(g, 6);
  EXPECT_EQ(g.num_edges(), 39);
  EXPECT_EQ(oracle::triangles_by_edges(g), oracle::frozen::paley13_triangles);
}

TEST(GenPaley, RejectsBadOrders) {
  EXPECT_THROW(gen_paley(7), InputError);   // 3 mod 4
  EXPECT_THROW(gen_paley(9), InputError);   // not prime
  EXPECT_THROW(gen_paley(15), InputError);  // not prime
  EXPECT_THROW(gen_paley(1), InputError);
}

TEST(GenPaley, EdgeCountIsHalfOfAllPairs) {
  for (const int q : {5, 13, 17, 29, 37, 41}) EXPECT_EQ(gen_paley(q).num_edges(), q * (q - 1) / 4) << q;
}

TEST(GenCirculant, Examples) {
  const Graph c5 = gen_circulant(5, {1});
  expect_regular(c5, 2);
  EXPECT_TRUE(c5.has_edge(0, 4));
  const Graph g8 = gen_circulant(8, {1, 4});
  expect_regular(g8, 3);
  EXPECT_EQ(g8.num_edges(), 12);
  EXPECT_EQ(gen_circulant(6, {1, 2, 3}), gen_complete(6));
}

TEST(GenCirculant, RejectsOffsets) {
  EXPECT_THROW(gen_circulant(8, {0}), InputError);
  EXPECT_THROW(gen_circulant(8, {5}), InputError);
}

TEST(GenRandomRegular, Examples) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_random_regular(10, 3, seed);
    expect_regular(g, 3);
    EXPECT_EQ(g.num_edges(), 15);
    EXPECT_EQ(gen_random_regular(4, 3, seed), gen_complete(4));
  }
}

TEST(GenRandomRegular, Deterministic) {
  const Graph a = gen_random_regular(100, 50, 12345);
  const Graph b = gen_random_regular(100, 50, 12345);
  EXPECT_EQ(a, b);
  expect_regular(a, 50);
  EXPECT_NE(a, gen_random_regular(100, 50, 12346));
}

// Fingerprints of the canonical text form, fixed when the generator was
// written; a change here breaks reproducibility of published runs.
TEST(GenRandomRegular, FrozenOutputs) {
  EXPECT_EQ(fnv1a(graph_to_string(gen_random_regular(20, 4, 42))), 0xf8783c060d688951ULL);
  EXPECT_EQ(fnv1a(graph_to_string(gen_random_regular(100, 50, 7))), 0x3faa5945c1732e91ULL);
}

TEST(GenRandomRegular, Errors) {
  EXPECT_THROW(gen_random_regular(5, 3, 1), InputError);   // nd odd
  EXPECT_THROW(gen_random_regular(5, 5, 1), InputError);   // d = n
  EXPECT_THROW(gen_random_regular(5, -2, 1), InputError);
  EXPECT_EQ(gen_random_regular(6, 0, 1).num_edges(), 0);
}

TEST(GenRandomRegular, ManyShapesAreRegularAndSimple) {
  for (const auto& [n, d] : {std::pair{12, 11}, {30, 2}, {31, 4}, {60, 20}, {90, 45}, {64, 63}}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) expect_regular(gen_random_regular(n, d, seed), d);
  }
}

TEST(Generate, DispatchesOnKind) {
  EXPECT_EQ(generate({GenKind::paley, 0, 0, 13, {}, 0}), gen_paley(13));
  EXPECT_EQ(generate({GenKind::circulant, 8, 0, 0, {1, 4}, 0}), gen_circulant(8, {1, 4}));
  EXPECT_EQ(generate({GenKind::random_regular, 20, 4, 0, {}, 42}), gen_random_regular(20, 4, 42));
  EXPECT_EQ(generate({GenKind::complete, 7, 0, 0, {}, 0}), gen_complete(7));
}

TEST(Petersen, Structure) {
  const Graph p = petersen();
  expect_regular(p, 3);
  EXPECT_EQ(oracle::triangles_by_edges(p), 0);
}
