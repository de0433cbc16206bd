#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "matchlab/catalog.hpp"
#include "matchlab/sparsify.hpp"

using namespace matchlab;
using namespace matchlab::testing;

TEST(Objective, SingleEdgeExamples) {
  EXPECT_NEAR(regularized_objective(k2(), {{1}}, 0.7), 1, 1e-18);
  EXPECT_NEAR(regularized_objective(k2(), {{0.5}}, 1), 0.5 + std::log(2.0L), 1e-18);
  EXPECT_NEAR(static_cast<double>(regularized_objective(k2(), {{0.5}}, 1)), 1.1931, 1e-4);
  EXPECT_EQ(regularized_objective(c4(), {{0, 0, 0, 0}}, 1), 0);
}

TEST(Objective, InfeasibleThrows) {
  EXPECT_THROW(regularized_objective(p3(), {{0.6, 0.6}}, 1), std::invalid_argument);
  EXPECT_THROW(regularized_objective(k2(), {{-0.1}}, 1), std::invalid_argument);
}

TEST(RegularizedLp, Examples) {
  const auto k = solve_regularized_lp(k2(), 0.1);
  EXPECT_NEAR(k.x.x[0], 1, 1e-6);
  const auto c = solve_regularized_lp(c4(), 0);
  EXPECT_GE(c.x.total(), 2 - 1e-6);
  const auto s = solve_regularized_lp(star3(), 0);
  EXPECT_NEAR(s.x.total(), 1, 1e-6);
}

TEST(RegularizedLp, FeasibleWithSmallGap) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_random_bipartite(20, 20, 4, seed);
    for (Real alpha : {0.0L, 0.05L, 0.3L}) {
      const auto sol = solve_regularized_lp(g, alpha);
      EXPECT_LE(sol.x.max_violation(g), 1e-8);
      for (Real v : sol.x.x) EXPECT_GE(v, 0);
      EXPECT_TRUE(sol.converged);
      EXPECT_LE(sol.gap, 1e-6);
    }
  }
}

TEST(RegularizedLp, ObjectiveSandwichOnBipartiteGraphs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_random_bipartite(15, 15, 3, seed);
    const Real nu = matching_number(g);
    for (Real alpha : {0.01L, 0.1L}) {
      const auto sol = solve_regularized_lp(g, alpha);
      EXPECT_GE(sol.x.total(), nu - alpha * nu * std::log(nu) - 1e-6);
    }
  }
}

TEST(RegularizedLp, MatchingPartDecreasesWithAlpha) {
  const Graph g = gen_random_bipartite(15, 15, 4, 3);
  Real previous = 1e300L;
  for (Real alpha : {0.01L, 0.1L, 0.5L}) {
    const Real total = solve_regularized_lp(g, alpha).x.total();
    EXPECT_LE(total, previous + 1e-6);
    previous = total;
  }
}

TEST(Sparsifier, GammaExample) {
  SparsifierParams p;
  EXPECT_NEAR(static_cast<double>(sparsifier_gamma(p, 100)), 0.09 / (640 * std::log(100.0)), 1e-15);
  EXPECT_NEAR(static_cast<double>(sparsifier_gamma(p, 100)), 3.05e-5, 1e-7);
}

TEST(Sparsifier, ClippedAndEmpty) {
  const Graph g = gen_grid(3, 3);
  SparsifierParams p;
  const FractionalMatching big{std::vector<Real>(g.num_edges(), 0.25)};
  EXPECT_EQ(sample_sparsifier(g, big, p, 1).num_edges(), g.num_edges());
  const FractionalMatching zero{std::vector<Real>(g.num_edges(), 0)};
  EXPECT_EQ(sample_sparsifier(g, zero, p, 1).num_edges(), 0);
}

TEST(Sparsifier, RetentionFrequenciesMatchProbabilities) {
  const Graph g = gen_random_bipartite(50, 50, 3, 7);
  ASSERT_GE(g.num_edges(), 20);
  SparsifierParams params;
  const Real gamma = sparsifier_gamma(params, g.num_vertices());
  FractionalMatching x{std::vector<Real>(g.num_edges(), 0)};
  for (int k = 0; k < 20; ++k) x.x[k] = gamma * (k + 1) / 21;
  const auto p = retention_probabilities(g, x, params);
  const int seeds = 1000;
  std::vector<int> kept(20);
  for (int s = 0; s < seeds; ++s) {
    const Graph h = sample_sparsifier(g, x, params, s);
    for (int k = 0; k < 20; ++k) kept[k] += h.has_edge(g.edges()[k].id);
  }
  for (int k = 0; k < 20; ++k) {
    const double pk = static_cast<double>(p[k]);
    EXPECT_NEAR(kept[k], seeds * pk, 3 * std::sqrt(seeds * pk * (1 - pk))) << "probe " << k;
  }
}

TEST(Sparsifier, RetentionIndependentAcrossEdges) {
  const Graph g = gen_grid(4, 4);
  SparsifierParams params;
  const Real gamma = sparsifier_gamma(params, g.num_vertices());
  FractionalMatching x{std::vector<Real>(g.num_edges(), gamma / 2)};
  const int seeds = 4000;
  std::vector<std::vector<int>> kept(g.num_edges(), std::vector<int>(seeds));
  for (int s = 0; s < seeds; ++s) {
    const Graph h = sample_sparsifier(g, x, params, s);
    for (int k = 0; k < g.num_edges(); ++k) kept[k][s] = h.has_edge(g.edges()[k].id);
  }
  // For independent Bernoulli(1/2) pairs the sample covariance has sd 1/(4 sqrt(N)).
  const double sigma = 0.25 / std::sqrt(static_cast<double>(seeds));
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      double ma = 0, mb = 0, mab = 0;
      for (int s = 0; s < seeds; ++s) {
        ma += kept[a][s];
        mb += kept[b][s];
        mab += kept[a][s] * kept[b][s];
      }
      ma /= seeds;
      mb /= seeds;
      mab /= seeds;
      EXPECT_LT(std::abs(mab - ma * mb), 3 * sigma) << a << "," << b;
    }
  }
}

TEST(SparsifierReport, Extremes) {
  const Graph g = gen_grid(3, 4);
  const auto same = sparsifier_report(g, g, 0.3);
  EXPECT_EQ(same.ratio, 1);
  EXPECT_TRUE(same.pass());
  const auto empty = sparsifier_report(g, remove_edges(g, std::vector<EdgeId>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}), 0.3);
  EXPECT_EQ(empty.ratio, 0);
  EXPECT_FALSE(empty.pass());
}

TEST(Stability, SingleEdge) {
  const auto r = stability_experiment(k2(), 0.01, 1e-8, 1, 1);
  ASSERT_EQ(r.trials.size(), 1u);
  EXPECT_NEAR(r.trials[0].s, 2, 1e-6);
  EXPECT_NEAR(r.trials[0].l1, 1, 1e-6);
}

TEST(Stability, RemovingAnUnusedEdgeChangesNothing) {
  // A pendant path hanging off a triangle-free graph: with alpha = 0 the
  // solver is exact, so a zero-weight edge can go without moving x.
  const Graph g = star3();
  const auto base = solve_regularized_lp(g, 0);
  int zero = -1;
  for (int k = 0; k < g.num_edges(); ++k) {
    if (base.x.x[k] == 0) zero = k;
  }
  ASSERT_GE(zero, 0);
  const auto after = solve_regularized_lp(remove_edge(g, g.edges()[zero].id), 0);
  EXPECT_NEAR(after.x.total(), base.x.total(), 2e-6 * g.num_edges());
}

TEST(Stability, ReportsAreConsistent) {
  const Graph g = gen_random_bipartite(25, 25, 4, 2);
  const auto r = stability_experiment(g, 0.1, 1e-6, 5, 4);
  ASSERT_EQ(r.trials.size(), 5u);
  for (const auto& t : r.trials) {
    EXPECT_GE(t.s, 0);
    EXPECT_NEAR(t.scaled, t.s * 0.1L / std::log(static_cast<Real>(g.num_vertices())), 1e-12);
    EXPECT_LE(t.scaled, r.max_scaled);
  }
}
