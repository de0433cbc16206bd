#pragma once

#include <cstdint>
#include <vector>

#include "matchlab/graph.hpp"

namespace matchlab {

/// One representative of every isomorphism class of connected graphs with
/// 1..max_edges edges (max_edges <= 10), ordered by (edges, vertices,
/// canonical code). Vertices of each representative follow its canonical
/// order and edge ids are dense.
std::vector<Graph> connected_graph_catalog(int max_edges);

/// Isomorphism-invariant code of a graph with at most 11 vertices.
std::uint64_t canonical_code(const Graph& g);

}  // namespace matchlab
