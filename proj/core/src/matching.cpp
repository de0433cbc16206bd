#include "matchlab/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace matchlab {

void for_each_matching(const Graph& g, const Pinning* constraint, std::uint64_t cap,
                       const std::function<void(const std::vector<EdgeId>&)>& visit) {
  Pinning pin = constraint ? constraint->normalized() : Pinning{};
  if (constraint) pin.validate(g);

  const auto all = g.edges();
  std::vector<char> banned_vertex(g.num_vertices(), 0);
  for (VertexId v : pin.vertex_negative) banned_vertex[v] = 1;

  // Candidate edges in id order, with pinned-out edges removed up front.
  std::vector<Edge> cand;
  for (const Edge& e : all) {
    if (std::binary_search(pin.negative.begin(), pin.negative.end(), e.id)) continue;
    if (banned_vertex[e.u] || banned_vertex[e.v]) continue;
    cand.push_back(e);
  }
  const int k = static_cast<int>(cand.size());

  std::vector<char> used(g.num_vertices(), 0);
  std::vector<EdgeId> current;
  std::uint64_t emitted = 0;

  auto accept = [&]() {
    for (EdgeId e : pin.positive) {
      if (!std::binary_search(current.begin(), current.end(), e)) return false;
    }
    for (VertexId v : pin.vertex_positive) {
      if (!used[v]) return false;
    }
    return true;
  };

  // Emit the current set, then extend it by every later compatible edge:
  // this yields lexicographic order of the sorted id sequences.
  auto rec = [&](auto&& self, int from) -> void {
    if (accept()) {
      if (++emitted > cap) throw CapExceeded("matching enumeration exceeded cap " + std::to_string(cap));
      visit(current);
    }
    for (int i = from; i < k; ++i) {
      const Edge& e = cand[i];
      if (used[e.u] || used[e.v]) continue;
      used[e.u] = used[e.v] = 1;
      current.push_back(e.id);
      self(self, i + 1);
      current.pop_back();
      used[e.u] = used[e.v] = 0;
    }
  };
  rec(rec, 0);
}

std::vector<Matching> enumerate_matchings(const Graph& g, const Pinning* constraint, std::uint64_t cap) {
  std::vector<Matching> out;
  for_each_matching(g, constraint, cap, [&](const std::vector<EdgeId>& m) { out.push_back(Matching{m}); });
  return out;
}

Matching hopcroft_karp(const Graph& g, const Bipartition& sides) {
  const int n = g.num_vertices();
  constexpr int kNil = -1;
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<VertexId> left;
  for (VertexId v = 0; v < n; ++v) {
    if (sides[v] == 0) left.push_back(v);
  }
  std::vector<int> mate(n, kNil);       // partner vertex
  std::vector<EdgeId> via(n, kNil);     // matched edge id
  std::vector<int> dist(n, kInf);

  auto bfs = [&]() {
    std::queue<VertexId> q;
    bool found = false;
    for (VertexId u : left) {
      if (mate[u] == kNil) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (EdgeId e : g.incident(u)) {
        VertexId w = g.edge(e).other(u);
        VertexId next = mate[w];
        if (next == kNil) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[u] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  auto dfs = [&](auto&& self, VertexId u) -> bool {
    for (EdgeId e : g.incident(u)) {
      VertexId w = g.edge(e).other(u);
      VertexId next = mate[w];
      if (next == kNil || (dist[next] == dist[u] + 1 && self(self, next))) {
        mate[u] = w;
        mate[w] = u;
        via[u] = via[w] = e;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };

  while (bfs()) {
    for (VertexId u : left) {
      if (mate[u] == kNil) dfs(dfs, u);
    }
  }

  Matching m;
  for (VertexId u : left) {
    if (mate[u] != kNil) m.edges.push_back(via[u]);
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

Matching maximum_matching(const Graph& g, std::uint64_t cap) {
  if (g.bipartition()) return hopcroft_karp(g, *g.bipartition());
  if (auto sides = find_bipartition(g)) return hopcroft_karp(g, *sides);
  Matching best;
  for_each_matching(g, nullptr, cap, [&](const std::vector<EdgeId>& m) {
    if (m.size() > best.edges.size()) best.edges = m;
  });
  return best;
}

int matching_number(const Graph& g, std::uint64_t cap) {
  return static_cast<int>(maximum_matching(g, cap).size());
}

}  // namespace matchlab
