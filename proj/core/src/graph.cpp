#include "matchlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace matchlab {

namespace {

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Graph::Graph(int num_vertices, const std::vector<std::pair<VertexId, VertexId>>& edge_list) {
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    edges.push_back({static_cast<EdgeId>(i), edge_list[i].first, edge_list[i].second});
  }
  *this = from_edges(num_vertices, std::move(edges));
}

Graph Graph::from_edges(int num_vertices, std::vector<Edge> edges) {
  if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
  Graph g;
  g.n_ = num_vertices;
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  EdgeId bound = edges.empty() ? 0 : edges.back().id + 1;
  g.position_.assign(bound, -1);
  g.incident_.assign(num_vertices, {});
  std::set<std::pair<VertexId, VertexId>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge& e = edges[i];
    if (e.id < 0) throw std::invalid_argument("negative edge id");
    if (i > 0 && edges[i - 1].id == e.id) {
      throw std::invalid_argument("duplicate edge id " + std::to_string(e.id));
    }
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices) {
      throw std::invalid_argument("edge " + std::to_string(e.id) + " has an endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second) {
      throw std::invalid_argument("parallel edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    g.position_[e.id] = static_cast<int>(i);
    g.incident_[e.u].push_back(e.id);
    g.incident_[e.v].push_back(e.id);
  }
  g.edges_ = std::move(edges);
  g.labels_.resize(num_vertices);
  std::iota(g.labels_.begin(), g.labels_.end(), 0);
  return g;
}

bool Graph::has_edge(EdgeId id) const {
  return id >= 0 && id < edge_id_bound() && position_[id] >= 0;
}

const Edge& Graph::edge(EdgeId id) const {
  if (!has_edge(id)) throw std::out_of_range("unknown edge id " + std::to_string(id));
  return edges_[position_[id]];
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return std::nullopt;
  const auto& inc = degree(u) <= degree(v) ? incident_[u] : incident_[v];
  for (EdgeId e : inc) {
    const Edge& ed = edge(e);
    if ((ed.u == u && ed.v == v) || (ed.u == v && ed.v == u)) return e;
  }
  return std::nullopt;
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& inc : incident_) best = std::max(best, static_cast<int>(inc.size()));
  return best;
}

Graph Graph::with_embedding(RotationSystem rotation) const {
  if (static_cast<int>(rotation.size()) != n_) {
    throw std::invalid_argument("rotation system has the wrong number of vertices");
  }
  for (VertexId v = 0; v < n_; ++v) {
    std::vector<EdgeId> sorted = rotation[v];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != incident_[v]) {
      throw std::invalid_argument("rotation at vertex " + std::to_string(v) +
                                  " does not list its incident edges exactly once");
    }
  }
  Graph g = *this;
  g.embedding_ = std::move(rotation);
  return g;
}

Graph Graph::with_bipartition(Bipartition sides) const {
  if (static_cast<int>(sides.size()) != n_) {
    throw std::invalid_argument("bipartition has the wrong number of vertices");
  }
  for (const Edge& e : edges_) {
    if (sides[e.u] > 1 || sides[e.v] > 1 || sides[e.u] == sides[e.v]) {
      throw std::invalid_argument("edge " + std::to_string(e.id) + " does not cross the bipartition");
    }
  }
  Graph g = *this;
  g.bipartition_ = std::move(sides);
  return g;
}

Graph Graph::with_labels(std::vector<VertexId> labels) const {
  if (static_cast<int>(labels.size()) != n_) throw std::invalid_argument("label count mismatch");
  Graph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

bool Matching::contains(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }

bool VertexSet::contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

Pinning Pinning::normalized() const {
  Pinning p = *this;
  sort_unique(p.positive);
  sort_unique(p.negative);
  sort_unique(p.vertex_positive);
  sort_unique(p.vertex_negative);
  return p;
}

void Pinning::validate(const Graph& g) const {
  Pinning p = normalized();
  std::vector<VertexId> covered;
  for (EdgeId e : p.positive) {
    if (!g.has_edge(e)) throw std::invalid_argument("pinning names unknown edge " + std::to_string(e));
    if (std::binary_search(p.negative.begin(), p.negative.end(), e)) {
      throw std::invalid_argument("edge " + std::to_string(e) + " pinned both ways");
    }
    covered.push_back(g.edge(e).u);
    covered.push_back(g.edge(e).v);
  }
  for (EdgeId e : p.negative) {
    if (!g.has_edge(e)) throw std::invalid_argument("pinning names unknown edge " + std::to_string(e));
  }
  std::sort(covered.begin(), covered.end());
  if (std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
    throw std::invalid_argument("positively pinned edges do not form a matching");
  }
  for (VertexId v : p.vertex_positive) {
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("pinning names unknown vertex");
  }
  for (VertexId v : p.vertex_negative) {
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("pinning names unknown vertex");
    if (std::binary_search(covered.begin(), covered.end(), v)) {
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " pinned uncovered but has a positive edge");
    }
  }
}

bool Pinning::satisfied_by(const Graph& g, const Matching& m) const {
  for (EdgeId e : positive) {
    if (!m.contains(e)) return false;
  }
  for (EdgeId e : negative) {
    if (m.contains(e)) return false;
  }
  if (vertex_positive.empty() && vertex_negative.empty()) return true;
  VertexSet cov = covered_vertices(g, m);
  for (VertexId v : vertex_positive) {
    if (!cov.contains(v)) return false;
  }
  for (VertexId v : vertex_negative) {
    if (cov.contains(v)) return false;
  }
  return true;
}

Pinning combine(const Pinning& a, const Pinning& b) {
  Pinning p = a;
  p.positive.insert(p.positive.end(), b.positive.begin(), b.positive.end());
  p.negative.insert(p.negative.end(), b.negative.begin(), b.negative.end());
  p.vertex_positive.insert(p.vertex_positive.end(), b.vertex_positive.begin(), b.vertex_positive.end());
  p.vertex_negative.insert(p.vertex_negative.end(), b.vertex_negative.begin(), b.vertex_negative.end());
  return p.normalized();
}

bool is_matching(const Graph& g, const Matching& m) {
  if (!std::is_sorted(m.edges.begin(), m.edges.end())) return false;
  std::vector<char> used(g.num_vertices(), 0);
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    if (i > 0 && m.edges[i] == m.edges[i - 1]) return false;
    if (!g.has_edge(m.edges[i])) return false;
    const Edge& e = g.edge(m.edges[i]);
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

VertexSet covered_vertices(const Graph& g, const Matching& m) {
  VertexSet s;
  s.vertices.reserve(2 * m.size());
  for (EdgeId id : m.edges) {
    const Edge& e = g.edge(id);
    s.vertices.push_back(e.u);
    s.vertices.push_back(e.v);
  }
  std::sort(s.vertices.begin(), s.vertices.end());
  return s;
}

int symmetric_difference_size(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  int common = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<int>(a.size() + b.size()) - 2 * common;
}

Graph remove_edges(const Graph& g, std::span<const EdgeId> doomed) {
  std::vector<char> drop(g.edge_id_bound(), 0);
  for (EdgeId e : doomed) {
    if (!g.has_edge(e)) throw std::out_of_range("unknown edge id " + std::to_string(e));
    drop[e] = 1;
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (!drop[e.id]) kept.push_back(e);
  }
  Graph h = Graph::from_edges(g.num_vertices(), std::move(kept)).with_labels(g.vertex_labels());
  if (g.embedding()) {
    RotationSystem rot = *g.embedding();
    for (auto& r : rot) {
      std::erase_if(r, [&](EdgeId e) { return drop[e] != 0; });
    }
    h = h.with_embedding(std::move(rot));
  }
  if (g.bipartition()) h = h.with_bipartition(*g.bipartition());
  return h;
}

Graph remove_edge(const Graph& g, EdgeId e) { return remove_edges(g, std::span<const EdgeId>(&e, 1)); }

Graph remove_vertex(const Graph& g, VertexId v) {
  if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("unknown vertex " + std::to_string(v));
  std::vector<VertexId> keep;
  for (VertexId w = 0; w < g.num_vertices(); ++w) {
    if (w != v) keep.push_back(w);
  }
  return induced_subgraph(g, keep);
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  std::vector<VertexId> index(g.num_vertices(), -1);
  std::vector<VertexId> sorted(vertices.begin(), vertices.end());
  sort_unique(sorted);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    VertexId v = sorted[i];
    if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("unknown vertex " + std::to_string(v));
    index[v] = static_cast<VertexId>(i);
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (index[e.u] >= 0 && index[e.v] >= 0) kept.push_back({e.id, index[e.u], index[e.v]});
  }
  const int k = static_cast<int>(sorted.size());
  std::vector<VertexId> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = g.vertex_label(sorted[i]);
  Graph h = Graph::from_edges(k, std::move(kept)).with_labels(std::move(labels));
  if (g.embedding()) {
    RotationSystem rot(k);
    for (int i = 0; i < k; ++i) {
      for (EdgeId e : (*g.embedding())[sorted[i]]) {
        if (h.has_edge(e)) rot[i].push_back(e);
      }
    }
    h = h.with_embedding(std::move(rot));
  }
  if (g.bipartition()) {
    Bipartition sides(k);
    for (int i = 0; i < k; ++i) sides[i] = (*g.bipartition())[sorted[i]];
    h = h.with_bipartition(std::move(sides));
  }
  return h;
}

std::vector<EdgeId> neighbor_edges(const Graph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  std::vector<EdgeId> out;
  for (VertexId w : {ed.u, ed.v}) {
    for (EdgeId f : g.incident(w)) {
      if (f != e) out.push_back(f);
    }
  }
  sort_unique(out);
  return out;
}

std::optional<Bipartition> find_bipartition(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> color(n, -1);
  for (VertexId s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.edge(e).other(v);
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return Bipartition(color.begin(), color.end());
}

bool is_connected(const Graph& g) {
  const int n = g.num_vertices();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.edge(e).other(v);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

namespace {

std::string render(const std::vector<std::int32_t>& ids) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << ' ';
    os << ids[i];
  }
  os << '}';
  return os.str();
}

}  // namespace

std::string to_string(const Matching& m) { return render(m.edges); }
std::string to_string(const VertexSet& s) { return render(s.vertices); }

}  // namespace matchlab
