#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "matchlab/graph.hpp"

namespace matchlab {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// All matchings of g satisfying `constraint`, each once, in lexicographic
/// order of their sorted edge-id lists. Throws CapExceeded past `cap`.
std::vector<Matching> enumerate_matchings(const Graph& g, const Pinning* constraint = nullptr,
                                          std::uint64_t cap = kDefaultEnumerationCap);

/// Visits matchings in the same order without materializing them. The
/// visitor receives the sorted edge ids of each matching.
void for_each_matching(const Graph& g, const Pinning* constraint, std::uint64_t cap,
                       const std::function<void(const std::vector<EdgeId>&)>& visit);

/// Maximum matching: Hopcroft-Karp on bipartite graphs (stored or detected
/// bipartition), otherwise the first maximum-size matching in enumeration
/// order. Throws CapExceeded when a non-bipartite graph is too large.
Matching maximum_matching(const Graph& g, std::uint64_t cap = kDefaultEnumerationCap);

/// Hopcroft-Karp; `sides` must be a valid two-coloring of g.
Matching hopcroft_karp(const Graph& g, const Bipartition& sides);

int matching_number(const Graph& g, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace matchlab
