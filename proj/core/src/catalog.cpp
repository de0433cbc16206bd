#include "matchlab/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace matchlab {

namespace {

// Upper-triangle bit index of the pair (i, j), i < j.
int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }

struct Small {
  int n;
  std::vector<std::uint16_t> adj;
};

std::uint64_t code_under(const Small& g, const std::vector<int>& pos) {
  std::uint64_t code = 0;
  for (int u = 0; u < g.n; ++u) {
    for (int v = u + 1; v < g.n; ++v) {
      if ((g.adj[u] >> v) & 1) {
        int a = pos[u], b = pos[v];
        if (a > b) std::swap(a, b);
        code |= 1ULL << pair_bit(a, b);
      }
    }
  }
  return code;
}

// Color refinement, then the largest code over orderings that respect the
// (invariantly sorted) color classes.
std::uint64_t canonical(const Small& g) {
  const int n = g.n;
  std::vector<int> color(n);
  for (int v = 0; v < n; ++v) color[v] = __builtin_popcount(g.adj[v]);
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s{color[v]};
      std::vector<int> nb;
      for (int w = 0; w < n; ++w) {
        if ((g.adj[v] >> w) & 1) nb.push_back(color[w]);
      }
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {s, v};
    }
    std::vector<std::vector<int>> keys;
    for (auto& s : sig) keys.push_back(s.first);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) next[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v].first) - keys.begin());
    const std::size_t classes_before = std::set<int>(color.begin(), color.end()).size();
    color = next;
    if (keys.size() == classes_before) break;
  }

  // Classes in color order; positions are assigned class by class.
  std::map<int, std::vector<int>> classes;
  for (int v = 0; v < n; ++v) classes[color[v]].push_back(v);
  std::vector<std::vector<int>> groups;
  for (auto& [c, vs] : classes) groups.push_back(vs);

  std::uint64_t best = 0;
  bool have = false;
  std::vector<int> pos(n);
  auto rec = [&](auto&& self, std::size_t gi, int offset) -> void {
    if (gi == groups.size()) {
      std::uint64_t c = code_under(g, pos);
      if (!have || c > best) {
        best = c;
        have = true;
      }
      return;
    }
    std::vector<int>& grp = groups[gi];
    std::sort(grp.begin(), grp.end());
    do {
      for (std::size_t k = 0; k < grp.size(); ++k) pos[grp[k]] = offset + static_cast<int>(k);
      self(self, gi + 1, offset + static_cast<int>(grp.size()));
    } while (std::next_permutation(grp.begin(), grp.end()));
  };
  rec(rec, 0, 0);
  return best;
}

Small from_code(int n, std::uint64_t code) {
  Small g{n, std::vector<std::uint16_t>(n, 0)};
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if ((code >> pair_bit(u, v)) & 1ULL) {
        g.adj[u] |= 1u << v;
        g.adj[v] |= 1u << u;
      }
    }
  }
  return g;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  if (g.num_vertices() > 11) throw std::invalid_argument("canonical_code supports at most 11 vertices");
  Small s{g.num_vertices(), std::vector<std::uint16_t>(g.num_vertices(), 0)};
  for (const Edge& e : g.edges()) {
    s.adj[e.u] |= 1u << e.v;
    s.adj[e.v] |= 1u << e.u;
  }
  return canonical(s);
}

std::vector<Graph> connected_graph_catalog(int max_edges) {
  if (max_edges < 0 || max_edges > 10) throw std::invalid_argument("catalog supports up to 10 edges");
  // Level k holds canonical (n, code) pairs with k edges. Every connected
  // graph with k + 1 edges arises from one with k edges by adding either a
  // pendant vertex or an edge between existing vertices.
  std::vector<std::set<std::pair<int, std::uint64_t>>> level(max_edges + 1);
  if (max_edges >= 1) level[1].insert({2, 1ULL});
  for (int k = 1; k < max_edges; ++k) {
    for (auto [n, code] : level[k]) {
      const Small g = from_code(n, code);
      for (int v = 0; v < n; ++v) {
        Small h = g;
        h.n = n + 1;
        h.adj.push_back(static_cast<std::uint16_t>(1u << v));
        h.adj[v] |= 1u << n;
        level[k + 1].insert({n + 1, canonical(h)});
      }
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if ((g.adj[u] >> v) & 1) continue;
          Small h = g;
          h.adj[u] |= 1u << v;
          h.adj[v] |= 1u << u;
          level[k + 1].insert({n, canonical(h)});
        }
      }
    }
  }
  std::vector<Graph> out;
  for (int k = 1; k <= max_edges; ++k) {
    for (auto [n, code] : level[k]) {
      std::vector<std::pair<VertexId, VertexId>> edges;
      for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
          if ((code >> pair_bit(u, v)) & 1ULL) edges.push_back({u, v});
        }
      }
      std::sort(edges.begin(), edges.end());
      out.emplace_back(n, edges);
    }
  }
  return out;
}

}  // namespace matchlab
