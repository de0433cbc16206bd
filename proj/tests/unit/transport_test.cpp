#include <gtest/gtest.h>

#include "helpers.hpp"
#include "matchlab/catalog.hpp"
#include "matchlab/rng.hpp"
#include "matchlab/transport.hpp"

using namespace matchlab;
using namespace matchlab::testing;

namespace {
MatchingDistribution random_law(const Graph& g, Rng& rng) {
  auto d = exact_gibbs(g, 1);
  Real total = 0;
  for (auto& p : d.probs) total += (p = static_cast<Real>(rng.uniform()) + 0.01L);
  for (auto& p : d.probs) p /= total;
  return d;
}
}  // namespace

TEST(Wasserstein, IdenticalLawsAreAtDistanceZero) {
  const auto d = exact_gibbs(c4(), 2);
  EXPECT_NEAR(wasserstein_distance(c4(), d, d, Metric::kEdge), 0, 1e-18);
}

TEST(Wasserstein, SingleEdgeAtTwoActivities) {
  const auto a = exact_gibbs(k2(), 1), b = exact_gibbs(k2(), 3);
  EXPECT_NEAR(wasserstein_distance(k2(), a, b, Metric::kEdge), 0.25, 1e-17);
  EXPECT_NEAR(wasserstein_distance(k2(), a, b, Metric::kVertex), 0.5, 1e-17);
}

TEST(Wasserstein, DeletingAPathEndEdge) {
  // mu_P3 = (1/3, 1/3, 1/3); deleting edge 0 gives (1/2, 1/2) on {}, {1}. The mass
  // on {0} moves half to {} at cost 1 and half to {1} at cost 2.
  const auto a = exact_gibbs(p3(), 1), b = exact_gibbs(remove_edge(p3(), 0), 1);
  EXPECT_NEAR(wasserstein_distance(p3(), a, b, Metric::kEdge), 0.5, 1e-17);
}

TEST(Wasserstein, PointMasses) {
  TransportProblem p{{1, 0}, {0, 1}, hamming_cost(p3(), std::vector<Matching>{matching({0}), matching({1})},
                                                  std::vector<Matching>{matching({0}), matching({1})}, Metric::kEdge)};
  const auto r = wasserstein(p);
  EXPECT_NEAR(r.value, 2, 1e-18);
  EXPECT_NEAR(r.coupling[0][1], 1, 1e-18);
}

TEST(Wasserstein, PinnedPathLaws) {
  const Pinning in = Pinning::edge_in(0), out = Pinning::edge_out(0);
  const auto a = exact_gibbs(p3(), 1, &in), b = exact_gibbs(p3(), 1, &out);
  const auto problem = make_problem(p3(), a, b, Metric::kEdge);
  EXPECT_NEAR(wasserstein(problem).value, 1.5, 1e-17);
  EXPECT_NEAR(wasserstein_distance(p3(), a, b, Metric::kVertex), 2, 1e-17);

  // Joint support is {} , {0}, {1} in canonical order; f(M) = |M|.
  const std::vector<Real> size = {0, 1, 1};
  EXPECT_NEAR(kr_dual_bound(problem, size), 0.5, 1e-17);
  const std::vector<Real> zero(3, 0);
  EXPECT_EQ(kr_dual_bound(problem, zero), 0);
}

TEST(Wasserstein, HammingCostMatrix) {
  const std::vector<Matching> a = {matching({}), matching({0})};
  const std::vector<Matching> b = {matching({1}), matching({0})};
  const auto e = hamming_cost(p3(), a, b, Metric::kEdge);
  EXPECT_EQ(e, (CostMatrix{{1, 1}, {2, 0}}));
  const auto v = hamming_cost(p3(), a, b, Metric::kVertex);
  EXPECT_EQ(v, (CostMatrix{{2, 2}, {2, 0}}));
  const std::vector<Matching> same = {matching({0}), matching({1}), matching({})};
  const auto diag = hamming_cost(p3(), same, same, Metric::kEdge);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(diag[i][i], 0);
  const std::vector<Matching> bad = {matching({9})};
  EXPECT_THROW(hamming_cost(p3(), a, bad, Metric::kEdge), std::invalid_argument);
}

TEST(Wasserstein, MalformedProblemThrows) {
  TransportProblem p{{0.5, 0.5}, {1.0}, {{0}}};
  EXPECT_THROW(wasserstein(p), std::invalid_argument);
}

TEST(KantorovichRubinstein, DualMatchesPrimal) {
  Rng rng(11);
  for (const Graph& g : connected_graph_catalog(5)) {
    const auto a = random_law(g, rng), b = random_law(g, rng);
    const auto problem = make_problem(g, a, b, Metric::kEdge);
    const auto res = wasserstein(problem);
    EXPECT_NEAR(res.dual_value, res.value, 1e-12);
    const auto f = kr_potential(problem, res);
    EXPECT_NEAR(kr_dual_bound(problem, f), res.value, 1e-12);
    for (std::size_t i = 0; i < res.row_dual.size(); ++i)
      for (std::size_t j = 0; j < res.col_dual.size(); ++j)
        EXPECT_LE(res.row_dual[i] + res.col_dual[j], problem.cost[i][j] + 1e-12);
  }
}

TEST(KantorovichRubinstein, NonLipschitzPotentialIsRejected) {
  const auto a = exact_gibbs(k2(), 1), b = exact_gibbs(k2(), 3);
  const auto problem = make_problem(k2(), a, b, Metric::kEdge);
  const std::vector<Real> f = {0, 5};
  EXPECT_THROW(kr_dual_bound(problem, f), LipschitzViolation);
}

TEST(TransportProperties, TriangleInequality) {
  Rng rng(5);
  for (const Graph& g : connected_graph_catalog(5)) {
    const auto a = random_law(g, rng), b = random_law(g, rng), c = random_law(g, rng);
    for (Metric m : {Metric::kEdge, Metric::kVertex}) {
      EXPECT_LE(wasserstein_distance(g, a, c, m),
                wasserstein_distance(g, a, b, m) + wasserstein_distance(g, b, c, m) + 1e-12);
    }
  }
}

TEST(TransportProperties, MixtureScalesDistance) {
  Rng rng(9);
  for (const Graph& g : connected_graph_catalog(5)) {
    const auto a = random_law(g, rng), b = random_law(g, rng);
    auto mix = a;
    for (std::size_t i = 0; i < mix.size(); ++i) mix.probs[i] = 0.25L * a.probs[i] + 0.75L * b.probs[i];
    EXPECT_NEAR(wasserstein_distance(g, a, mix, Metric::kEdge), 0.75L * wasserstein_distance(g, a, b, Metric::kEdge),
                1e-12);
  }
}

TEST(TransportProperties, VertexDistanceAtMostTwiceEdgeDistance) {
  Rng rng(13);
  for (const Graph& g : connected_graph_catalog(6)) {
    const auto a = random_law(g, rng), b = random_law(g, rng);
    EXPECT_LE(wasserstein_distance(g, a, b, Metric::kVertex), 2 * wasserstein_distance(g, a, b, Metric::kEdge) + 1e-12);
  }
}

TEST(TransportProperties, VertexLawsDirectly) {
  const auto a = vertex_gibbs_exact(k2(), 1), b = vertex_gibbs_exact(k2(), 3);
  EXPECT_NEAR(wasserstein_distance(a, b), 0.5, 1e-17);
}
