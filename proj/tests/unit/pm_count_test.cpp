#include <gtest/gtest.h>

#include "helpers.hpp"
#include "matchlab/catalog.hpp"
#include "matchlab/pm_count.hpp"

using namespace matchlab;
using namespace matchlab::testing;

TEST(CountEnumerate, Examples) {
  EXPECT_EQ(count_pm_enumerate(k2()), 1);
  EXPECT_EQ(count_pm_enumerate(c4()), 2);
  EXPECT_EQ(count_pm_enumerate(c6()), 2);
  EXPECT_EQ(count_pm_enumerate(gen_hexagon_chain(1)), 1);
  EXPECT_EQ(count_pm_enumerate(Graph()), 1);
  EXPECT_EQ(count_pm_enumerate(p3()), 0);
}

TEST(CountFkt, Examples) {
  EXPECT_EQ(count_pm_fkt(c4()), 2);
  EXPECT_EQ(count_pm_fkt(gen_grid(2, 3)), 3);
  EXPECT_EQ(count_pm_fkt(gen_hexagon_chain(2)), 1);
  EXPECT_EQ(count_pm_fkt(gen_grid(8, 8)), 12988816);
}

TEST(CountFkt, IsolatedVertexGivesZero) {
  const Graph g = Graph(4, {{0, 1}, {1, 2}}).with_embedding({{0}, {0, 1}, {1}, {}});
  EXPECT_EQ(count_pm_fkt(g), 0);
  EXPECT_EQ(count_pm_enumerate(g), 0);
}

TEST(CountFkt, RequiresEmbedding) { EXPECT_THROW(count_pm_fkt(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})), Error); }

TEST(CountRyser, Examples) {
  EXPECT_EQ(count_pm_ryser(gen_complete_bipartite(2, 2)), 2);
  EXPECT_EQ(count_pm_ryser(gen_complete_bipartite(3, 3)), 6);
  EXPECT_EQ(count_pm_ryser(gen_complete_bipartite(2, 3)), 0);
  EXPECT_THROW(count_pm_ryser(k3()), std::invalid_argument);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = gen_random_bipartite(6, 6, 3, seed);
    EXPECT_EQ(count_pm_ryser(g), count_pm_enumerate(g)) << "seed " << seed;
  }
}

TEST(Kasteleyn, PfaffianSquaredIsDeterminant) {
  for (const Graph& g : {c4(), c6(), gen_grid(3, 4), gen_grid(4, 4), gen_hexagon_chain(3)}) {
    const auto o = kasteleyn_orientation(g);
    for (std::size_t f = 0; f < o.faces.size(); ++f) {
      if (std::find(o.root_faces.begin(), o.root_faces.end(), static_cast<int>(f)) != o.root_faces.end()) continue;
      EXPECT_EQ(o.along[f] % 2, 1);
    }
    const auto a = kasteleyn_matrix(g, o);
    const BigInt pf = pfaffian(a);
    EXPECT_EQ(pf * pf, determinant_bareiss(a));
    EXPECT_EQ(abs(pf), count_pm_enumerate(g));
  }
}

TEST(Kasteleyn, HexagonChainsHaveOnePerfectMatching) {
  for (int ell = 1; ell <= 6; ++ell) EXPECT_EQ(count_pm_fkt(gen_hexagon_chain(ell)), 1) << ell;
}

TEST(CountOracle, Dispatch) {
  EXPECT_EQ(make_oracle(gen_grid(3, 3)).method(), CountMethod::kFkt);
  EXPECT_EQ(make_oracle(gen_complete_bipartite(3, 3)).method(), CountMethod::kRyser);
  EXPECT_EQ(make_oracle(k3()).method(), CountMethod::kEnumerate);
  EXPECT_THROW(make_oracle(k3(), CountMethod::kRyser), std::invalid_argument);
  EXPECT_EQ(parse_count_method("fkt"), CountMethod::kFkt);
  EXPECT_STREQ(to_string(CountMethod::kRyser), "ryser");
  EXPECT_EQ(make_oracle(c4()).error_bound(), 0);
}

TEST(CountOracle, RestrictionToInducedSubgraphsIsCoherent) {
  for (const Graph& g : {gen_grid(3, 3), gen_complete_bipartite(3, 3), gen_hexagon_chain(1)}) {
    for (CountMethod method : {CountMethod::kFkt, CountMethod::kRyser, CountMethod::kEnumerate}) {
      if (!CountOracle::applicable(method, g)) continue;
      const CountOracle oracle = make_oracle(g, method);
      const int n = g.num_vertices();
      for (std::uint32_t mask = 0; mask < (1u << n); mask += 7) {
        std::vector<VertexId> u;
        for (int v = 0; v < n; ++v) {
          if (mask >> v & 1) u.push_back(v);
        }
        const Graph h = induced_subgraph(g, u);
        EXPECT_EQ(oracle.count(h), count_pm_enumerate(h)) << to_string(method) << " mask " << mask;
      }
    }
  }
}

TEST(CountProperties, AllMethodsAgreeOnCatalog) {
  for (const Graph& g : connected_graph_catalog(7)) {
    const BigInt want = count_pm_enumerate(g);
    if (CountOracle::applicable(CountMethod::kRyser, g)) EXPECT_EQ(count_pm_ryser(g), want);
    EXPECT_EQ(matching_polynomial(g).coeffs.size() * 2 == static_cast<std::size_t>(g.num_vertices()) + 2,
              want > 0);
  }
}
