#pragma once

#include <cstdint>
#include <vector>

#include "matchlab/graph.hpp"
#include "matchlab/polynomial.hpp"

namespace matchlab {

struct Point {
  double x, y;
};

/// Rotation system of a straight-line drawing: incident edges of each vertex
/// sorted counterclockwise by angle.
RotationSystem embedding_from_coordinates(const Graph& g, const std::vector<Point>& coords);

/// Chain of l hexagons between a source s and a target t.
/// Vertices: s = 0, then per block j: s^(j), u1, v1, u2, v2, t^(j); t last.
/// Block edges: s^(j)-u1-v1-t^(j) and s^(j)-u2-v2-t^(j).
/// Edge ids: (s, s^(1)); per block its six edges followed by the connector
/// (t^(j), s^(j+1)); finally (t^(l), t). Carries an embedding and a bipartition.
Graph gen_hexagon_chain(int ell);

/// Path on n vertices (edges i -- i+1), with embedding and bipartition.
Graph gen_path(int n);
/// Cycle on n >= 3 vertices drawn on a circle; bipartition when n is even.
Graph gen_cycle(int n);
/// K_{a,b}: left 0..a-1, right a..a+b-1, with bipartition and no embedding.
Graph gen_complete_bipartite(int a, int b);
/// Complete graph K_n without embedding.
Graph gen_complete(int n);

/// w columns by h rows, vertex (i, j) = j * w + i, with embedding and parity bipartition.
Graph gen_grid(int w, int h);

/// Pairs are visited in a seeded random order; each is added with
/// probability p when both endpoints still have degree < delta_max.
Graph gen_random_bounded_degree(int n, int delta_max, double p, std::uint64_t seed);

/// Left vertices 0..n1-1 of degree d, right vertices n1..n1+n2-1 sharing the
/// n1*d stubs as evenly as possible. Stubs are paired at random, rejecting
/// pairs that would repeat an edge; throws std::invalid_argument when the
/// demands cannot be met.
Graph gen_random_bipartite(int n1, int n2, int d, std::uint64_t seed);

/// Grid whose edges are kept independently with probability `keep`; the
/// embedding and bipartition are restricted.
Graph gen_random_grid_subgraph(int w, int h, double keep, std::uint64_t seed);

struct HexagonReport {
  int ell = 0;
  BigInt pm_count = 0;       // by enumeration
  BigInt pm_count_fkt = 0;
  int nu = 0;
  int nu_claimed = 0;        // 2 + 2 l
  BigInt near_count = 0;     // matchings of size nu - 1
  BigInt near_bound = 0;     // 2^l
  std::vector<double> lambdas;
  std::vector<Real> p;       // probability of the perfect matching
  std::vector<Real> p_bound; // lambda / (lambda + 2^l)

  bool pm_unique() const { return pm_count == 1 && pm_count_fkt == 1; }
  bool nu_matches_claim() const { return nu == nu_claimed; }
  bool near_count_ok() const { return near_count >= near_bound; }
  bool p_ok() const;
  bool pass() const { return pm_unique() && nu_matches_claim() && near_count_ok() && p_ok(); }
};

std::vector<double> default_lambda_grid();

HexagonReport verify_hexagon(int ell, const std::vector<double>& lambdas = default_lambda_grid());

}  // namespace matchlab
