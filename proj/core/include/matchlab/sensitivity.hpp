#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matchlab/gibbs.hpp"
#include "matchlab/rng.hpp"
#include "matchlab/transport.hpp"

namespace matchlab {

struct EdgeSensitivity {
  EdgeId edge;
  Real deletion;  // W_E(mu_G, mu_{G-e})
  Real pinning;   // W_E(mu_G^{e<-+}, mu_G^{e<--})
};

struct SensitivityReport {
  Real lambda = 0;
  int delta_max = 0;
  Real bound = 0;  // 1 + 2 lambda Delta
  std::vector<EdgeSensitivity> rows;
  Real max_deletion = 0;
  Real max_pinning = 0;
  bool pass = true;  // every distance within bound (+1e-9)
};

/// Exact W_E between the Gibbs laws on G and G - e, for every edge, plus the
/// pinning variant, in the shared edge-id space.
SensitivityReport edge_sensitivity_exact(const Graph& g, Real lambda);

struct PinningQuery {
  EdgeId edge = 0;
  Metric metric = Metric::kEdge;
  /// Edge metric: drop `edge` from every matching (scope E - i).
  /// Vertex metric: drop `scope_vertex` (scope V - u).
  bool restricted = false;
  /// Vertex removed from the scope; -1 picks a degree-1 endpoint of the
  /// edge when there is one, else its first endpoint.
  VertexId scope_vertex = -1;
  const Pinning* tau = nullptr;
};

/// W between mu^{tau, i<-+} and mu^{tau, i<--}. Throws UnsatisfiablePinning
/// if either side is empty.
Real pinning_distance_exact(const Graph& g, Real lambda, const PinningQuery& query);

/// W_V(mu^{tau, v<-+}, mu^{tau, v<--}) over the full vertex set.
Real vertex_pinning_distance_exact(const Graph& g, Real lambda, VertexId v, const Pinning* tau = nullptr);

/// Degree-1 endpoint u of a pendant edge, if any.
std::optional<VertexId> pendant_endpoint(const Graph& g, EdgeId e);

struct InfluenceMatrix {
  std::vector<std::vector<Real>> psi;  // psi[i][j] = P(j in U | i in U) - P(j in U | i not in U)
  Pinning pinning;
  Real norm = 0;  // largest eigenvalue
};

/// Influence matrix of the vertex Gibbs law under `pinning`; rows of
/// vertices with a degenerate marginal are zero. Throws UnsatisfiablePinning.
InfluenceMatrix influence_spectral_norm(const Graph& g, Real lambda, const Pinning& pinning);

struct KappaAuditOptions {
  int pinnings_per_instance = 200;
  /// Graphs whose pinning space has at most this many vertex pinnings are
  /// audited exhaustively.
  int exhaustive_limit = 200;
  bool influence = true;
  std::uint64_t seed = 1;
};

struct BoundTally {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  Real max_value = 0;
  Real max_excess = -1e300L;  // max of value - bound
  void record(Real value, Real bound, Real tol);
};

struct KappaAuditReport {
  Real lambda = 0;
  BoundTally pendant_edge;    // W_E on E - i  <= lambda Delta
  BoundTally pendant_vertex;  // W_V on V - u  <= 1
  BoundTally full_vertex;     // W_V(v<-+, v<--) <= 2
  BoundTally influence;       // norm(Psi)     <= 2
  std::uint64_t skipped_pinnings = 0;
  bool pass() const {
    return pendant_edge.violations + pendant_vertex.violations + full_vertex.violations + influence.violations == 0;
  }
};

/// Vertex pinnings for audits: exhaustive over `free` when 3^|free| is
/// within `exhaustive_limit`, else `count` samples that pin each free vertex
/// with probability 1/2 to its state under a uniformly chosen matching.
std::vector<Pinning> audit_pinnings(const Graph& g, const std::vector<VertexId>& free, int count,
                                    int exhaustive_limit, Rng& rng);

KappaAuditReport kappa_bounds_audit(const std::vector<Graph>& corpus, Real lambda,
                                    const KappaAuditOptions& options = {});

struct CoupledEstimate {
  Real mean = 0;
  Real standard_error = 0;
  std::uint64_t samples = 0;
};

/// Mean |M1 sym-diff M2| for edge-Glauber chains on G and G - e run in
/// lockstep from the empty matching: both see the same proposed edge id and
/// acceptance variate, and the G - e chain holds when e is proposed. When e
/// is not an edge of g the chains are identical.
CoupledEstimate coupled_sensitivity_estimate(const Graph& g, EdgeId e, double lambda, std::uint64_t steps,
                                             std::uint64_t samples, std::uint64_t seed);

}  // namespace matchlab
