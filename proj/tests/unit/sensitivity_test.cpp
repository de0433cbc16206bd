#include <gtest/gtest.h>

#include "helpers.hpp"
#include "matchlab/catalog.hpp"
#include "matchlab/sensitivity.hpp"
#include "matchlab/transport.hpp"

using namespace matchlab;
using namespace matchlab::testing;

TEST(EdgeSensitivity, SingleEdge) {
  const auto r = edge_sensitivity_exact(k2(), 1);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_NEAR(r.rows[0].deletion, 0.5, 1e-17);
  EXPECT_NEAR(r.bound, 3, 1e-18);
  EXPECT_TRUE(r.pass);
}

TEST(EdgeSensitivity, PathWithinBound) {
  const auto r = edge_sensitivity_exact(p3(), 1);
  EXPECT_EQ(r.delta_max, 2);
  EXPECT_NEAR(r.bound, 5, 1e-18);
  EXPECT_NEAR(r.rows[0].deletion, 0.5, 1e-17);
  EXPECT_NEAR(r.rows[0].pinning, 1.5, 1e-17);
  EXPECT_TRUE(r.pass);
}

TEST(EdgeSensitivity, VanishingActivity) {
  const auto r = edge_sensitivity_exact(c4(), 1e-12L);
  EXPECT_LT(r.max_deletion, 1e-11);
}

TEST(PinningDistance, PathExamples) {
  PinningQuery q;
  q.edge = 0;
  EXPECT_NEAR(pinning_distance_exact(p3(), 1, q), 1.5, 1e-17);
  q.metric = Metric::kVertex;
  EXPECT_NEAR(pinning_distance_exact(p3(), 1, q), 2.0, 1e-17);
}

TEST(PinningDistance, SingleEdgeRestrictedScopeIsZero) {
  PinningQuery q;
  q.restricted = true;
  EXPECT_EQ(pinning_distance_exact(k2(), 1, q), 0);
  // With scope V - u the other endpoint remains, and it is covered exactly
  // when the edge is in.
  q.metric = Metric::kVertex;
  EXPECT_EQ(pinning_distance_exact(k2(), 1, q), 1);
}

TEST(PinningDistance, PendantBoundsOnPath) {
  PinningQuery q;
  q.restricted = true;
  EXPECT_LE(pinning_distance_exact(p3(), 1, q), 2 + 1e-9);
  q.metric = Metric::kVertex;
  EXPECT_LE(pinning_distance_exact(p3(), 1, q), 1 + 1e-9);
  EXPECT_EQ(pendant_endpoint(p3(), 0), std::optional<VertexId>(0));
  EXPECT_EQ(pendant_endpoint(c4(), 0), std::nullopt);
}

TEST(PinningDistance, UnsatisfiableSideThrows) {
  PinningQuery q;
  // Forcing edge 0 of P4 leaves vertex 2 no partner once vertex 3 is out.
  const Pinning tau = combine(Pinning::vertex_in(2), Pinning::vertex_out(3));
  q.tau = &tau;
  EXPECT_THROW(pinning_distance_exact(p4(), 1, q), UnsatisfiablePinning);
}

TEST(KappaAudit, StarPendantEdges) {
  const auto r = kappa_bounds_audit({star3()}, 2);
  EXPECT_GT(r.pendant_vertex.checks, 0u);
  EXPECT_LE(r.pendant_vertex.max_value, 1 + 1e-9);
  EXPECT_TRUE(r.pass());
}

TEST(KappaAudit, CatalogPasses) {
  KappaAuditOptions opt;
  opt.pinnings_per_instance = 20;
  for (Real lambda : {0.5L, 1.0L, 2.0L}) {
    const auto r = kappa_bounds_audit(connected_graph_catalog(5), lambda, opt);
    EXPECT_TRUE(r.pass()) << "lambda " << static_cast<double>(lambda);
  }
}

TEST(KappaAudit, PinningsAreExhaustiveOnSmallGraphs) {
  Rng rng(1);
  const std::vector<VertexId> free = {0, 1, 2};
  EXPECT_EQ(audit_pinnings(p3(), free, 5, 200, rng).size(), 27u);
  const std::vector<VertexId> many = {0, 1, 2, 3, 4, 5};
  EXPECT_EQ(audit_pinnings(c6(), many, 5, 200, rng).size(), 5u);
}

TEST(Influence, SingleEdgeMeetsBound) {
  const auto inf = influence_spectral_norm(k2(), 1, Pinning{});
  EXPECT_EQ(inf.psi, (std::vector<std::vector<Real>>{{1, 1}, {1, 1}}));
  EXPECT_NEAR(inf.norm, 2, 1e-9);
}

TEST(Influence, DisjointEdgesDecouple) {
  const auto inf = influence_spectral_norm(two_edges(), 1, Pinning{});
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j) {
      EXPECT_EQ(inf.psi[i][j], 0);
      EXPECT_EQ(inf.psi[j][i], 0);
    }
  // Each component is a K2 block with eigenvalue 2.
  EXPECT_NEAR(inf.norm, 2, 1e-9);
}

TEST(Influence, FourCycleAndDegenerateRows) {
  EXPECT_LE(influence_spectral_norm(c4(), 1, Pinning{}).norm, 2 + 1e-9);
  const auto pinned = influence_spectral_norm(p3(), 1, Pinning::vertex_in(0));
  for (Real v : pinned.psi[0]) EXPECT_EQ(v, 0);
  for (Real v : pinned.psi[1]) EXPECT_EQ(v, 0);
}

TEST(CoupledEstimate, SingleEdge) {
  const auto est = coupled_sensitivity_estimate(k2(), 0, 1, 200, 10000, 3);
  EXPECT_NEAR(est.mean, 0.5, 0.02);
  EXPECT_EQ(est.samples, 10000u);
}

TEST(CoupledEstimate, AbsentEdgeGivesZero) {
  const auto est = coupled_sensitivity_estimate(c4(), 99, 1, 200, 1000, 3);
  EXPECT_EQ(est.mean, 0);
}

TEST(CoupledEstimate, SixCycleUnderCeiling) {
  const auto est = coupled_sensitivity_estimate(c6(), 0, 4, 2000, 2000, 3);
  EXPECT_LE(est.mean, 17);
}

TEST(CoupledEstimate, UpperBoundsExactDistance) {
  for (const Graph& g : {p3(), p4(), c4(), star3(), gen_grid(2, 3)}) {
    const auto exact = edge_sensitivity_exact(g, 1);
    for (const auto& row : exact.rows) {
      const auto est = coupled_sensitivity_estimate(g, row.edge, 1, 400, 4000, 9);
      EXPECT_GE(est.mean, row.deletion - 3 * est.standard_error) << "edge " << row.edge;
    }
  }
}

TEST(SensitivityProperties, BoundsHoldOnCatalog) {
  for (const Graph& g : connected_graph_catalog(5)) {
    for (Real lambda : {0.5L, 1.0L, 2.0L}) {
      const auto r = edge_sensitivity_exact(g, lambda);
      EXPECT_TRUE(r.pass);
      EXPECT_LE(r.max_pinning, r.bound + 1e-9);
      for (VertexId v = 0; v < g.num_vertices(); ++v)
        EXPECT_LE(vertex_pinning_distance_exact(g, lambda, v), 2 + 1e-9);
    }
  }
}
