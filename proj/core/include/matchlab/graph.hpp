#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchlab/types.hpp"

namespace matchlab {

struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;

  VertexId other(VertexId w) const { return w == u ? v : u; }
  bool operator==(const Edge&) const = default;
};

/// Per-vertex cyclic order of incident edge ids describing a planar drawing.
using RotationSystem = std::vector<std::vector<EdgeId>>;

/// Side (0 or 1) of every vertex in a two-coloring.
using Bipartition = std::vector<std::uint8_t>;

/// Immutable simple undirected graph.
///
/// Edge ids are stable: deleting edges or vertices keeps the ids of the
/// surviving edges, so the id space of a derived graph may be sparse. This
/// lets distributions over matchings of G and of G - e live in one space.
/// Vertices of derived graphs are renumbered densely; vertex_label() maps a
/// vertex back to its id in the graph it was derived from.
class Graph {
 public:
  Graph() = default;

  /// Dense ids 0..m-1 in the order given.
  Graph(int num_vertices, const std::vector<std::pair<VertexId, VertexId>>& edge_list);

  /// Explicit (possibly sparse) edge ids. Throws std::invalid_argument on
  /// self-loops, parallel edges, duplicate ids or out-of-range endpoints.
  static Graph from_edges(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  /// One past the largest edge id that can appear in this graph.
  EdgeId edge_id_bound() const { return static_cast<EdgeId>(position_.size()); }

  /// Edges sorted by id.
  std::span<const Edge> edges() const { return edges_; }
  bool has_edge(EdgeId id) const;
  const Edge& edge(EdgeId id) const;
  /// Index of the edge in edges(); -1 if absent.
  int position(EdgeId id) const { return has_edge(id) ? position_[id] : -1; }
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  /// Incident edge ids of v in increasing id order.
  std::span<const EdgeId> incident(VertexId v) const { return incident_.at(v); }
  int degree(VertexId v) const { return static_cast<int>(incident_.at(v).size()); }
  int max_degree() const;

  VertexId vertex_label(VertexId v) const { return labels_.at(v); }
  const std::vector<VertexId>& vertex_labels() const { return labels_; }

  const std::optional<RotationSystem>& embedding() const { return embedding_; }
  const std::optional<Bipartition>& bipartition() const { return bipartition_; }

  /// Throws std::invalid_argument unless every edge id appears exactly once in
  /// the rotation of each of its endpoints and nowhere else.
  Graph with_embedding(RotationSystem rotation) const;
  /// Throws std::invalid_argument unless every edge crosses the partition.
  Graph with_bipartition(Bipartition sides) const;
  Graph with_labels(std::vector<VertexId> labels) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> position_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<VertexId> labels_;
  std::optional<RotationSystem> embedding_;
  std::optional<Bipartition> bipartition_;
};

/// Sorted set of edge ids; no two members share an endpoint in the host graph.
struct Matching {
  std::vector<EdgeId> edges;

  std::size_t size() const { return edges.size(); }
  bool contains(EdgeId e) const;
  auto operator<=>(const Matching&) const = default;
};

/// Sorted set of vertex ids.
struct VertexSet {
  std::vector<VertexId> vertices;

  std::size_t size() const { return vertices.size(); }
  bool contains(VertexId v) const;
  auto operator<=>(const VertexSet&) const = default;
};

/// Conditioning event on a Gibbs distribution: edges forced in or out of the
/// matching, vertices forced covered or uncovered.
struct Pinning {
  std::vector<EdgeId> positive;
  std::vector<EdgeId> negative;
  std::vector<VertexId> vertex_positive;
  std::vector<VertexId> vertex_negative;

  bool empty() const {
    return positive.empty() && negative.empty() && vertex_positive.empty() &&
           vertex_negative.empty();
  }
  /// Sorts and deduplicates every list.
  Pinning normalized() const;
  /// Checks the structural invariants against g; throws std::invalid_argument.
  void validate(const Graph& g) const;
  bool satisfied_by(const Graph& g, const Matching& m) const;

  static Pinning edge_in(EdgeId e) { return Pinning{{e}, {}, {}, {}}; }
  static Pinning edge_out(EdgeId e) { return Pinning{{}, {e}, {}, {}}; }
  static Pinning vertex_in(VertexId v) { return Pinning{{}, {}, {v}, {}}; }
  static Pinning vertex_out(VertexId v) { return Pinning{{}, {}, {}, {v}}; }
};

/// Union of two pinnings (no consistency check).
Pinning combine(const Pinning& a, const Pinning& b);

bool is_matching(const Graph& g, const Matching& m);
VertexSet covered_vertices(const Graph& g, const Matching& m);

/// |a symmetric-difference b| for sorted id lists.
int symmetric_difference_size(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

Graph remove_edge(const Graph& g, EdgeId e);
Graph remove_edges(const Graph& g, std::span<const EdgeId> edges);
/// Drops v and its incident edges; remaining vertices are renumbered in order.
Graph remove_vertex(const Graph& g, VertexId v);
/// Graph on `vertices` (renumbered in increasing order) with all internal
/// edges; rotation system and bipartition are restricted.
Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

/// Edges sharing an endpoint with e, excluding e itself.
std::vector<EdgeId> neighbor_edges(const Graph& g, EdgeId e);

/// Two-coloring by BFS, or nullopt if g has an odd cycle.
std::optional<Bipartition> find_bipartition(const Graph& g);

bool is_connected(const Graph& g);

/// "{0 3 5}" style rendering used in CSV output.
std::string to_string(const Matching& m);
std::string to_string(const VertexSet& s);

}  // namespace matchlab
