#include "matchlab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "matchlab/matching.hpp"
#include "matchlab/pm_count.hpp"
#include "matchlab/rng.hpp"

namespace matchlab {

RotationSystem embedding_from_coordinates(const Graph& g, const std::vector<Point>& coords) {
  if (coords.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw std::invalid_argument("one coordinate per vertex expected");
  }
  RotationSystem rot(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::vector<std::pair<double, EdgeId>> order;
    for (EdgeId id : g.incident(v)) {
      const Point& a = coords[v];
      const Point& b = coords[g.edge(id).other(v)];
      order.push_back({std::atan2(b.y - a.y, b.x - a.x), id});
    }
    std::sort(order.begin(), order.end());
    for (auto& [angle, id] : order) rot[v].push_back(id);
  }
  return rot;
}

Graph gen_hexagon_chain(int ell) {
  if (ell < 1) throw std::invalid_argument("hexagon chain needs l >= 1");
  const int n = 2 + 6 * ell;
  const VertexId s = 0, t = n - 1;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<Point> xy(n);
  xy[s] = {1, 0};
  xy[t] = {3.0 * ell + 2, 0};
  edges.push_back({s, 1});
  for (int j = 0; j < ell; ++j) {
    const VertexId sj = 1 + 6 * j, u1 = sj + 1, v1 = sj + 2, u2 = sj + 3, v2 = sj + 4, tj = sj + 5;
    const double cx = 3.0 * (j + 1) + 0.5;
    xy[sj] = {cx - 1, 0};
    xy[u1] = {cx - 0.5, 0.87};
    xy[v1] = {cx + 0.5, 0.87};
    xy[u2] = {cx - 0.5, -0.87};
    xy[v2] = {cx + 0.5, -0.87};
    xy[tj] = {cx + 1, 0};
    edges.insert(edges.end(), {{sj, u1}, {u1, v1}, {v1, tj}, {sj, u2}, {u2, v2}, {v2, tj}});
    edges.push_back({tj, j + 1 < ell ? tj + 1 : t});
  }
  Graph g(n, edges);
  g = g.with_embedding(embedding_from_coordinates(g, xy));
  return g.with_bipartition(*find_bipartition(g));
}

Graph gen_path(int n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  return gen_grid(n, 1);
}

Graph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<Point> xy(n);
  for (int i = 0; i < n; ++i) {
    const double a = 2 * M_PI * i / n;
    xy[i] = {std::cos(a), std::sin(a)};
    if (i + 1 < n) edges.push_back({i, i + 1});
  }
  edges.push_back({0, n - 1});
  Graph g(n, edges);
  g = g.with_embedding(embedding_from_coordinates(g, xy));
  if (n % 2 == 0) g = g.with_bipartition(*find_bipartition(g));
  return g;
}

Graph gen_complete_bipartite(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("K_{a,b} needs a, b >= 0");
  std::vector<std::pair<VertexId, VertexId>> edges;
  Bipartition sides(a + b, 0);
  for (int j = 0; j < b; ++j) sides[a + j] = 1;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) edges.push_back({i, a + j});
  }
  return Graph(a + b, edges).with_bipartition(sides);
}

Graph gen_complete(int n) {
  if (n < 0) throw std::invalid_argument("K_n needs n >= 0");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, edges);
}

Graph gen_grid(int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("grid needs w, h >= 1");
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<Point> xy(w * h);
  Bipartition sides(w * h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const VertexId v = j * w + i;
      xy[v] = {static_cast<double>(i), static_cast<double>(j)};
      sides[v] = (i + j) % 2;
      if (i + 1 < w) edges.push_back({v, v + 1});
      if (j + 1 < h) edges.push_back({v, v + w});
    }
  }
  Graph g(w * h, edges);
  return g.with_embedding(embedding_from_coordinates(g, xy)).with_bipartition(sides);
}

Graph gen_random_bounded_degree(int n, int delta_max, double p, std::uint64_t seed) {
  if (n < 0 || delta_max < 0 || !(p >= 0 && p <= 1)) throw std::invalid_argument("random graph parameters out of range");
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  Rng rng(seed);
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng.below(i)]);
  std::vector<int> deg(n, 0);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [u, v] : pairs) {
    if (deg[u] >= delta_max || deg[v] >= delta_max) continue;
    if (!(rng.uniform() < p)) continue;
    ++deg[u];
    ++deg[v];
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(edges.begin(), edges.end());
  return Graph(n, edges);
}

Graph gen_random_bipartite(int n1, int n2, int d, std::uint64_t seed) {
  if (n1 < 0 || n2 < 0 || d < 0) throw std::invalid_argument("bipartite parameters out of range");
  if (d > n2) throw std::invalid_argument("left degree exceeds the right side");
  const long long stubs = static_cast<long long>(n1) * d;
  if (n2 == 0 && stubs > 0) throw std::invalid_argument("no right vertices for the stubs");
  if (n2 > 0 && (stubs + n2 - 1) / n2 > n1) throw std::invalid_argument("right degree exceeds the left side");

  Bipartition sides(n1 + n2, 0);
  for (int v = n1; v < n1 + n2; ++v) sides[v] = 1;
  Rng rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<VertexId> right;
    for (long long k = 0; k < stubs; ++k) right.push_back(n1 + static_cast<VertexId>(k % n2));
    std::vector<std::vector<char>> adj(n1, std::vector<char>(n2, 0));
    std::vector<std::pair<VertexId, VertexId>> edges;
    bool stuck = false;
    for (VertexId u = 0; u < n1 && !stuck; ++u) {
      for (int k = 0; k < d; ++k) {
        bool placed = false;
        for (int tries = 0; tries < 64 && !right.empty(); ++tries) {
          const std::size_t pick = rng.below(right.size());
          const VertexId v = right[pick];
          if (adj[u][v - n1]) continue;
          adj[u][v - n1] = 1;
          edges.push_back({u, v});
          right[pick] = right.back();
          right.pop_back();
          placed = true;
          break;
        }
        if (!placed) {
          stuck = true;
          break;
        }
      }
    }
    if (stuck) continue;
    std::sort(edges.begin(), edges.end());
    return Graph(n1 + n2, edges).with_bipartition(sides);
  }
  throw std::invalid_argument("could not realize the bipartite degree demands");
}

Graph gen_random_grid_subgraph(int w, int h, double keep, std::uint64_t seed) {
  const Graph grid = gen_grid(w, h);
  Rng rng(seed);
  std::vector<EdgeId> drop;
  for (const Edge& e : grid.edges()) {
    if (!(rng.uniform() < keep)) drop.push_back(e.id);
  }
  const Graph sub = remove_edges(grid, drop);
  // Re-densify ids so the instance is a standalone graph.
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<EdgeId> old_ids;
  for (const Edge& e : sub.edges()) {
    pairs.push_back({e.u, e.v});
    old_ids.push_back(e.id);
  }
  Graph out(sub.num_vertices(), pairs);
  RotationSystem rot = *sub.embedding();
  for (auto& ring : rot) {
    for (EdgeId& id : ring) id = static_cast<EdgeId>(std::lower_bound(old_ids.begin(), old_ids.end(), id) - old_ids.begin());
  }
  return out.with_embedding(rot).with_bipartition(*sub.bipartition());
}

std::vector<double> default_lambda_grid() { return {0.1, 0.3, 1, 3, 10, 30, 100, 300, 1000, 3000}; }

bool HexagonReport::p_ok() const {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > p_bound[i] * (1 + 1e-12L)) return false;
  }
  return true;
}

HexagonReport verify_hexagon(int ell, const std::vector<double>& lambdas) {
  if (ell < 1 || ell > 8) throw std::invalid_argument("verify_hexagon supports 1 <= l <= 8");
  const Graph g = gen_hexagon_chain(ell);
  HexagonReport r;
  r.ell = ell;
  r.pm_count = count_pm_enumerate(g);
  r.pm_count_fkt = count_pm_fkt(g);
  r.nu = matching_number(g);
  r.nu_claimed = 2 + 2 * ell;
  const MatchingPolynomial poly = matching_polynomial(g);
  r.near_count = r.nu >= 1 ? poly.coeffs[r.nu - 1] : BigInt(0);
  r.near_bound = BigInt(1) << ell;
  r.lambdas = lambdas;
  const Real two_l = std::ldexp(1.0L, ell);
  for (double lam : lambdas) {
    // p = m_nu lambda^nu / m(lambda), evaluated as 1 / sum_k m_k lambda^(k - nu).
    Real denom = 0;
    for (int k = 0; k <= poly.degree(); ++k) {
      denom += poly.coeffs[k].convert_to<Real>() * std::pow(static_cast<Real>(lam), static_cast<Real>(k - poly.degree()));
    }
    r.p.push_back(poly.coeffs[poly.degree()].convert_to<Real>() / denom);
    r.p_bound.push_back(lam / (lam + two_l));
  }
  return r;
}

}  // namespace matchlab
