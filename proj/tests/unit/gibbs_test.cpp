#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "matchlab/catalog.hpp"
#include "matchlab/gibbs.hpp"

using namespace matchlab;
using namespace matchlab::testing;

TEST(ExactGibbs, SingleEdge) {
  const auto d = exact_gibbs(k2(), 1);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.probability(matching({})), 0.5, 1e-18);
  EXPECT_NEAR(d.probability(matching({0})), 0.5, 1e-18);
  EXPECT_EQ(d.probability(matching({5})), 0);
}

TEST(ExactGibbs, PathWithLambdaTwo) {
  const auto d = exact_gibbs(p3(), 2);
  EXPECT_NEAR(d.probability(matching({})), 0.2, 1e-18);
  EXPECT_NEAR(d.probability(matching({0})), 0.4, 1e-18);
  EXPECT_NEAR(d.probability(matching({1})), 0.4, 1e-18);
  EXPECT_NEAR(d.mean_size(), 0.8, 1e-18);
}

TEST(ExactGibbs, PathWithFirstEdgeExcluded) {
  const Pinning out = Pinning::edge_out(0);
  const auto d = exact_gibbs(p3(), 1, &out);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.probability(matching({})), 0.5, 1e-18);
  EXPECT_NEAR(d.probability(matching({1})), 0.5, 1e-18);
}

TEST(ExactGibbs, PinnedPath) {
  const Pinning in = Pinning::edge_in(0);
  const auto d = exact_gibbs(p4(), 1, &in);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.probability(matching({0})), 0.5, 1e-18);
  EXPECT_NEAR(d.probability(matching({0, 2})), 0.5, 1e-18);
}

TEST(ExactGibbs, UnsatisfiablePinningThrows) {
  const Pinning stranded = combine(Pinning::vertex_in(0), Pinning::edge_out(0));
  EXPECT_THROW(exact_gibbs(p3(), 1, &stranded), UnsatisfiablePinning);
  const Pinning both = combine(Pinning::edge_in(0), Pinning::edge_in(1));
  EXPECT_THROW(exact_gibbs(p3(), 1, &both), std::invalid_argument);
}

TEST(ExactGibbs, VertexLawExamples) {
  const auto k = vertex_gibbs_exact(k2(), 1);
  EXPECT_NEAR(k.probability(vset({})), 0.5, 1e-18);
  EXPECT_NEAR(k.probability(vset({0, 1})), 0.5, 1e-18);
  const auto p = vertex_gibbs_exact(p3(), 1);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p.probability(vset({0, 1})), 1.0L / 3, 1e-18);
  EXPECT_NEAR(p.probability(vset({1, 2})), 1.0L / 3, 1e-18);
  const auto c = vertex_gibbs_exact(c4(), 1);
  ASSERT_EQ(c.size(), 6u);
  EXPECT_NEAR(c.probability(vset({})), 1.0L / 7, 1e-18);
  EXPECT_NEAR(c.probability(vset({0, 1})), 1.0L / 7, 1e-18);
  EXPECT_NEAR(c.probability(vset({0, 1, 2, 3})), 2.0L / 7, 1e-18);
}

TEST(MarginalProbability, Examples) {
  EXPECT_NEAR(marginal_probability(k2(), 1, Pinning::edge_in(0)), 0.5, 1e-18);
  EXPECT_NEAR(marginal_probability(p3(), 1, Pinning::vertex_in(1)), 2.0L / 3, 1e-18);
  // Two single edges and both perfect matchings cover a fixed vertex of C4.
  EXPECT_NEAR(marginal_probability(c4(), 1, Pinning::vertex_in(0)), 4.0L / 7, 1e-18);
}

TEST(ExactGibbs, VertexLawOfTwoEdges) {
  const auto v = vertex_gibbs_exact(two_edges(), 1);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_NEAR(v.probability(vset({})), 0.25, 1e-18);
  EXPECT_NEAR(v.probability(vset({0, 1, 2, 3})), 0.25, 1e-18);
  const VertexSet scope = vset({0, 1});
  const auto scoped = vertex_gibbs_exact(two_edges(), 1, nullptr, &scope);
  EXPECT_EQ(scoped.size(), 2u);
}

TEST(ExactGibbs, ProjectOutMergesSupport) {
  const auto d = project_out(exact_gibbs(p3(), 1), std::vector<EdgeId>{0});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.probability(matching({})), 2.0L / 3, 1e-18);
  EXPECT_NEAR(d.probability(matching({1})), 1.0L / 3, 1e-18);
}

TEST(ExactGibbs, CsvHasOneRowPerOutcome) {
  std::ostringstream os;
  write_csv(os, exact_gibbs(p3(), 1));
  int lines = 0;
  for (char c : os.str()) lines += c == '\n';
  EXPECT_EQ(lines, 4);
}

TEST(GibbsProperties, EdgeMarginalBounded) {
  for (const Graph& g : connected_graph_catalog(7)) {
    for (Real lambda : {0.5L, 1.0L, 4.0L}) {
      for (const Edge& e : g.edges()) {
        const Real p = marginal_probability(g, lambda, Pinning::edge_in(e.id));
        EXPECT_LE(p, lambda / (1 + lambda) + 1e-15);
        EXPECT_GT(p, 0);
      }
    }
  }
}

TEST(GibbsProperties, ExcludingAnEdgeEqualsDeletingIt) {
  for (const Graph& g : connected_graph_catalog(6)) {
    for (const Edge& e : g.edges()) {
      const Pinning out = Pinning::edge_out(e.id);
      const auto pinned = exact_gibbs(g, 1.5, &out);
      const auto deleted = exact_gibbs(remove_edge(g, e.id), 1.5);
      ASSERT_EQ(pinned.support, deleted.support);
      for (std::size_t i = 0; i < pinned.size(); ++i) EXPECT_NEAR(pinned.probs[i], deleted.probs[i], 1e-17);
    }
  }
}

TEST(GibbsProperties, ForcingAnEdgeEqualsDeletingItsEndpoints) {
  for (const Graph& g : connected_graph_catalog(6)) {
    for (const Edge& e : g.edges()) {
      const Pinning in = Pinning::edge_in(e.id);
      std::vector<VertexId> rest;
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (v != e.u && v != e.v) rest.push_back(v);
      }
      const Graph h = induced_subgraph(g, rest);
      const auto pinned = exact_gibbs(g, 2, &in);
      const auto reduced = exact_gibbs(h, 2);
      ASSERT_EQ(pinned.size(), reduced.size());
      EXPECT_NEAR(pinned.mean_size() - 1, reduced.mean_size(), 1e-15);
    }
  }
}

TEST(GibbsProperties, VertexLawIsPushForward) {
  for (const Graph& g : connected_graph_catalog(5)) {
    const auto direct = vertex_gibbs_exact(g, 3);
    const auto pushed = push_forward(g, exact_gibbs(g, 3));
    ASSERT_EQ(direct.support, pushed.support);
    Real total = 0;
    for (std::size_t i = 0; i < direct.size(); ++i) {
      EXPECT_NEAR(direct.probs[i], pushed.probs[i], 1e-17);
      total += direct.probs[i];
    }
    EXPECT_NEAR(total, 1, 1e-15);
  }
}

TEST(TotalVariation, CountsOutcomesOutsideTheLaw) {
  const std::vector<int> support = {0, 1};
  const std::vector<Real> probs = {0.5, 0.5};
  const std::map<int, std::uint64_t> hist = {{0, 50}, {2, 50}};
  EXPECT_NEAR(empirical_tv(support, probs, hist), 0.5, 1e-18);
  const std::map<int, std::uint64_t> exact = {{0, 5}, {1, 5}};
  EXPECT_NEAR(empirical_tv(support, probs, exact), 0, 1e-18);
}
