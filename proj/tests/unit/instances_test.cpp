#include <gtest/gtest.h>

#include "helpers.hpp"
#include "matchlab/catalog.hpp"
#include "matchlab/graph_io.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/pm_count.hpp"

using namespace matchlab;
using namespace matchlab::testing;

TEST(HexagonChain, Sizes) {
  for (int ell = 1; ell <= 6; ++ell) {
    const Graph g = gen_hexagon_chain(ell);
    EXPECT_EQ(g.num_vertices(), 2 + 6 * ell);
    EXPECT_EQ(g.num_edges(), 1 + 7 * ell);
    ASSERT_TRUE(g.bipartition().has_value());
    EXPECT_TRUE(g.embedding().has_value());
    for (const Edge& e : g.edges()) EXPECT_NE((*g.bipartition())[e.u], (*g.bipartition())[e.v]);
  }
  EXPECT_EQ(gen_hexagon_chain(1).num_edges(), 8);
  EXPECT_EQ(gen_hexagon_chain(2).num_edges(), 15);
}

TEST(HexagonChain, FaceParityCertificate) {
  for (int ell = 1; ell <= 6; ++ell) {
    const auto o = kasteleyn_orientation(gen_hexagon_chain(ell));
    for (std::size_t f = 0; f < o.faces.size(); ++f) {
      if (std::find(o.root_faces.begin(), o.root_faces.end(), static_cast<int>(f)) != o.root_faces.end()) continue;
      EXPECT_EQ(o.along[f] % 2, 1) << "ell " << ell << " face " << f;
    }
  }
}

TEST(VerifyHexagon, SmallestChain) {
  const auto r = verify_hexagon(1, {2.0});
  EXPECT_EQ(r.pm_count, 1);
  EXPECT_EQ(r.pm_count_fkt, 1);
  EXPECT_EQ(r.nu, 4);
  EXPECT_TRUE(r.nu_matches_claim());
  EXPECT_GE(r.near_count, 2);
  ASSERT_EQ(r.p.size(), 1u);
  EXPECT_LE(r.p[0], 0.5L);
  EXPECT_TRUE(r.pass());
}

TEST(VerifyHexagon, LongerChainsHaveMoreVerticesThanTheClaimedMatchingNumber) {
  // 2 + 6l vertices with a perfect matching force nu = 1 + 3l, which exceeds
  // 2 + 2l once l >= 2.
  const auto r = verify_hexagon(2);
  EXPECT_EQ(r.pm_count, 1);
  EXPECT_EQ(r.nu, 7);
  EXPECT_EQ(r.nu_claimed, 6);
  EXPECT_FALSE(r.nu_matches_claim());
  EXPECT_GE(r.near_count, 4);
  EXPECT_EQ(r.near_count, 35);
  EXPECT_TRUE(r.p_ok());
}

TEST(Grid, Examples) {
  EXPECT_EQ(canonical_code(gen_grid(2, 2)), canonical_code(c4()));
  const Graph g = gen_grid(2, 3);
  EXPECT_EQ(g.num_edges(), 7);
  EXPECT_EQ(count_pm_enumerate(g), 3);
  EXPECT_EQ(canonical_code(gen_grid(1, 5)), canonical_code(gen_path(5)));
  ASSERT_TRUE(g.bipartition().has_value());
  ASSERT_TRUE(g.embedding().has_value());
}

TEST(RandomGenerators, Examples) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) EXPECT_LE(gen_random_bounded_degree(10, 1, 0.5, seed).max_degree(), 1);
  EXPECT_EQ(gen_random_bipartite(5, 5, 0, 1).num_edges(), 0);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Graph g = gen_random_bounded_degree(12, 3, 0.5, seed);
    EXPECT_LE(g.max_degree(), 3);
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = gen_random_bipartite(8, 8, 3, seed);
    ASSERT_TRUE(g.bipartition().has_value());
    EXPECT_LE(g.max_degree(), 3);
  }
  EXPECT_ANY_THROW(gen_random_bipartite(2, 2, 3, 1));
}

TEST(RandomGenerators, Deterministic) {
  EXPECT_EQ(serialize_graph(gen_random_bounded_degree(20, 3, 0.3, 5)).text,
            serialize_graph(gen_random_bounded_degree(20, 3, 0.3, 5)).text);
  EXPECT_EQ(serialize_graph(gen_random_bipartite(10, 10, 3, 5)).text,
            serialize_graph(gen_random_bipartite(10, 10, 3, 5)).text);
  EXPECT_EQ(serialize_graph(gen_random_grid_subgraph(5, 5, 0.7, 5)).text,
            serialize_graph(gen_random_grid_subgraph(5, 5, 0.7, 5)).text);
  EXPECT_NE(serialize_graph(gen_random_bipartite(10, 10, 3, 5)).text,
            serialize_graph(gen_random_bipartite(10, 10, 3, 6)).text);
}

TEST(Families, CompleteGraphs) {
  EXPECT_EQ(gen_complete(5).num_edges(), 10);
  EXPECT_EQ(gen_complete_bipartite(3, 4).num_edges(), 12);
  EXPECT_EQ(gen_cycle(6).num_edges(), 6);
}
