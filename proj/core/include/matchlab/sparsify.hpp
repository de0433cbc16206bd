#pragma once

#include <cstdint>
#include <vector>

#include "matchlab/graph.hpp"

namespace matchlab {

/// Edge weights aligned with g.edges() (position order).
struct FractionalMatching {
  std::vector<Real> x;

  Real total() const;
  /// Largest sum of weights at a vertex, minus 1 (<= 0 when feasible).
  Real max_violation(const Graph& g) const;
};

/// x(E) + alpha sum_v H({x(e)}_{e in E(v)}) with H(x) = sum x ln(1/x), 0 ln 0 = 0.
/// Throws std::invalid_argument if x is negative or violates a degree
/// constraint by more than 1e-8.
Real regularized_objective(const Graph& g, const FractionalMatching& x, Real alpha);

struct LpOptions {
  Real tol = 1e-6L;
  std::uint64_t max_sweeps = 200000;
};

struct LpSolution {
  FractionalMatching x;   // feasible
  Real objective = 0;     // regularized objective of x
  Real dual_bound = 0;    // upper bound on the optimum
  Real gap = 0;           // dual_bound - objective
  std::uint64_t sweeps = 0;
  bool converged = false;
};

/// Maximizes the regularized objective over the degree polytope.
///
/// alpha > 0: exact block-coordinate descent on the dual. With multipliers y
/// the maximizer is x_e = exp((1 - y_u - y_v) / (2 alpha) - 1) and each y_v
/// has the closed-form update max(0, 2 alpha ln S_v). Iterates are scaled
/// into the polytope and the loop stops once the duality gap is below tol.
/// alpha = 0: the degree LP is solved exactly through a maximum matching of
/// the bipartite double cover.
LpSolution solve_regularized_lp(const Graph& g, Real alpha, const LpOptions& options = {});

struct SparsifierParams {
  double epsilon = 0.3;
  double alpha = 0;
  double c = 2;
};

/// gamma = eps^2 / (320 max(1, c) ln n).
Real sparsifier_gamma(const SparsifierParams& params, int n);

/// p_e = min(1, x_e / gamma).
std::vector<Real> retention_probabilities(const Graph& g, const FractionalMatching& x,
                                          const SparsifierParams& params);

/// Keeps edge e independently with p_e, using stream Rng(seed).split(id of e)
/// so the decision for an edge does not depend on the rest of the graph.
Graph sample_sparsifier(const Graph& g, const FractionalMatching& x, const SparsifierParams& params,
                        std::uint64_t seed);

struct SparsifierThresholds {
  double min_ratio = 0.6;
  /// Max degree of H must be at most factor * eps^-2 * ln n.
  double degree_factor = 60;
};

struct SparsifierReport {
  int max_degree_h = 0;
  int nu_h = 0;
  int nu_g = 0;
  double ratio = 1;
  double degree_limit = 0;
  bool ratio_pass = true;
  bool degree_pass = true;
  bool pass() const { return ratio_pass && degree_pass; }
};

SparsifierReport sparsifier_report(const Graph& g, const Graph& h, double epsilon,
                                   const SparsifierThresholds& thresholds = {});

struct StabilityTrial {
  EdgeId deleted;
  Real s;             // sum_v (sum_{f in E(v)} |x~(f) - x(f)|)^2
  Real l1;            // sum_f |x~(f) - x(f)|
  Real hamming;       // sum_e |p_e - p~_e|
  Real scaled;        // s * alpha / ln n
};

struct StabilityReport {
  int n = 0;
  int m = 0;
  Real alpha = 0;
  Real base_gap = 0;
  std::vector<StabilityTrial> trials;
  Real max_scaled = 0;
  Real mean_scaled = 0;
};

/// Deletes `trials` uniformly chosen edges (with replacement, from Rng(seed)),
/// resolving the LP each time; p_e uses `params` with the given alpha.
StabilityReport stability_experiment(const Graph& g, Real alpha, Real tol, int trials, std::uint64_t seed,
                                     const SparsifierParams& params = {});

}  // namespace matchlab
