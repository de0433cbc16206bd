#pragma once

#include <span>
#include <vector>

#include "matchlab/gibbs.hpp"

namespace matchlab {

enum class Metric { kEdge, kVertex };

using CostMatrix = std::vector<std::vector<Real>>;

/// d_E(M, M') = |M sym-diff M'| or d_V(M, M') = |V(M) sym-diff V(M')|.
/// Every edge id must exist in `host`; throws std::invalid_argument otherwise.
CostMatrix hamming_cost(const Graph& host, std::span<const Matching> a, std::span<const Matching> b,
                        Metric metric);
CostMatrix hamming_cost(std::span<const VertexSet> a, std::span<const VertexSet> b);

struct TransportProblem {
  std::vector<Real> p;
  std::vector<Real> q;
  CostMatrix cost;  // p.size() x q.size()
};

/// Both laws placed on the union of their supports, so the cost matrix is
/// square and the problem admits Kantorovich-Rubinstein potentials.
TransportProblem make_problem(const Graph& host, const MatchingDistribution& a, const MatchingDistribution& b,
                              Metric metric);
TransportProblem make_problem(const VertexDistribution& a, const VertexDistribution& b);

struct TransportResult {
  Real value = 0;
  CostMatrix coupling;
  std::vector<Real> row_dual;  // u_i
  std::vector<Real> col_dual;  // v_j, with u_i + v_j <= cost[i][j]
  Real dual_value = 0;
};

/// Exact optimum by successive shortest paths on the transportation graph.
/// Throws std::invalid_argument for malformed problems.
TransportResult wasserstein(const TransportProblem& problem);

Real wasserstein_distance(const Graph& host, const MatchingDistribution& a, const MatchingDistribution& b,
                          Metric metric);
Real wasserstein_distance(const VertexDistribution& a, const VertexDistribution& b);

class LipschitzViolation : public Error {
 public:
  LipschitzViolation(std::size_t a, std::size_t b, Real gap);
  std::size_t first, second;
};

/// <f, p - q> for f on the joint support of a square problem. Throws
/// LipschitzViolation naming the first pair with |f(a) - f(b)| > cost(a, b).
Real kr_dual_bound(const TransportProblem& problem, std::span<const Real> f);

/// 1-Lipschitz potential f(z) = min_j (cost(z, j) - v_j) built from a solved
/// square problem; <f, p - q> equals the optimal value.
std::vector<Real> kr_potential(const TransportProblem& problem, const TransportResult& result);

}  // namespace matchlab
