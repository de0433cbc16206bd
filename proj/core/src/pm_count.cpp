#include "matchlab/pm_count.hpp"

#include <algorithm>
#include <queue>

#include <boost/multiprecision/cpp_int.hpp>

namespace matchlab {

namespace mp = boost::multiprecision;

const char* to_string(CountMethod m) {
  switch (m) {
    case CountMethod::kAuto: return "auto";
    case CountMethod::kFkt: return "fkt";
    case CountMethod::kRyser: return "ryser";
    case CountMethod::kEnumerate: return "enumerate";
  }
  return "?";
}

CountMethod parse_count_method(const std::string& name) {
  if (name == "auto") return CountMethod::kAuto;
  if (name == "fkt") return CountMethod::kFkt;
  if (name == "ryser") return CountMethod::kRyser;
  if (name == "enumerate") return CountMethod::kEnumerate;
  throw std::invalid_argument("unknown counting method '" + name + "'");
}

BigInt count_pm_enumerate(const Graph& g, std::uint64_t cap) {
  const int n = g.num_vertices();
  if (n % 2) return 0;
  std::vector<char> used(n, 0);
  std::uint64_t found = 0;
  auto rec = [&](auto&& self, int from) -> void {
    while (from < n && used[from]) ++from;
    if (from == n) {
      if (++found > cap) throw CapExceeded("perfect matching enumeration exceeded cap " + std::to_string(cap));
      return;
    }
    used[from] = 1;
    for (EdgeId id : g.incident(from)) {
      VertexId w = g.edge(id).other(from);
      if (used[w]) continue;
      used[w] = 1;
      self(self, from + 1);
      used[w] = 0;
    }
    used[from] = 0;
  };
  rec(rec, 0);
  return BigInt(found);
}

// ---------------------------------------------------------------------------
// FKT

KasteleynOrientation kasteleyn_orientation(const Graph& g) {
  if (!g.embedding()) throw Error("fkt needs a rotation system");
  const RotationSystem& rot = *g.embedding();
  const int n = g.num_vertices();
  const int m = g.num_edges();
  const auto edges = g.edges();

  // Position of each edge inside the rotation at each of its endpoints.
  std::vector<std::pair<int, int>> slot(m);
  for (VertexId v = 0; v < n; ++v) {
    for (int k = 0; k < static_cast<int>(rot[v].size()); ++k) {
      int p = g.position(rot[v][k]);
      (edges[p].u == v ? slot[p].first : slot[p].second) = k;
    }
  }
  auto head = [&](int dart) { const Edge& e = edges[dart / 2]; return dart % 2 ? e.u : e.v; };
  auto next = [&](int dart) {
    const int p = dart / 2;
    const VertexId b = head(dart);
    const int k = edges[p].u == b ? slot[p].first : slot[p].second;
    const EdgeId f = rot[b][(k + 1) % rot[b].size()];
    const int q = g.position(f);
    return 2 * q + (edges[q].u == b ? 0 : 1);
  };

  KasteleynOrientation out;
  out.forward.assign(m, 1);
  std::vector<int> face_of(2 * m, -1);
  for (int d = 0; d < 2 * m; ++d) {
    if (face_of[d] >= 0) continue;
    const int f = static_cast<int>(out.faces.size());
    out.faces.emplace_back();
    for (int x = d; face_of[x] < 0; x = next(x)) {
      face_of[x] = f;
      out.faces[f].push_back(x);
    }
  }

  // Components, Euler check and a BFS spanning forest.
  std::vector<int> comp(n, -1);
  std::vector<char> tree(m, 0);
  int ncomp = 0;
  std::vector<int> comp_vertices, comp_edges;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp_vertices.push_back(0);
    comp_edges.push_back(0);
    std::queue<VertexId> q;
    q.push(s);
    comp[s] = ncomp;
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      ++comp_vertices[ncomp];
      for (EdgeId id : g.incident(x)) {
        VertexId y = g.edge(id).other(x);
        if (comp[y] < 0) {
          comp[y] = ncomp;
          tree[g.position(id)] = 1;
          q.push(y);
        }
      }
    }
    ++ncomp;
  }
  std::vector<int> comp_faces(ncomp, 0);
  for (int p = 0; p < m; ++p) ++comp_edges[comp[edges[p].u]];
  std::vector<int> face_comp(out.faces.size());
  for (std::size_t f = 0; f < out.faces.size(); ++f) {
    face_comp[f] = comp[edges[out.faces[f][0] / 2].u];
    ++comp_faces[face_comp[f]];
  }
  for (int c = 0; c < ncomp; ++c) {
    if (comp_edges[c] == 0) continue;
    if (comp_vertices[c] - comp_edges[c] + comp_faces[c] != 2) {
      throw Error("rotation system is not a planar embedding (Euler characteristic " +
                  std::to_string(comp_vertices[c] - comp_edges[c] + comp_faces[c]) + ")");
    }
  }

  // Dual tree over co-tree edges, rooted at the first face of each component.
  const int nf = static_cast<int>(out.faces.size());
  std::vector<std::vector<std::pair<int, int>>> dual(nf);  // (neighbor face, edge position)
  for (int p = 0; p < m; ++p) {
    if (tree[p]) continue;
    int f1 = face_of[2 * p], f2 = face_of[2 * p + 1];
    if (f1 == f2) throw Error("co-tree edge bounds a single face; embedding is not planar");
    dual[f1].push_back({f2, p});
    dual[f2].push_back({f1, p});
  }
  std::vector<int> parent_edge(nf, -1), order;
  std::vector<char> seen(nf, 0);
  for (int r = 0; r < nf; ++r) {
    if (seen[r]) continue;
    out.root_faces.push_back(r);
    seen[r] = 1;
    std::queue<int> q;
    q.push(r);
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      order.push_back(f);
      for (auto [h, p] : dual[f]) {
        if (seen[h]) continue;
        seen[h] = 1;
        parent_edge[h] = p;
        q.push(h);
      }
    }
  }
  std::vector<int> roots_per_comp(ncomp, 0);
  for (int r : out.root_faces) ++roots_per_comp[face_comp[r]];
  for (int c = 0; c < ncomp; ++c) {
    if (roots_per_comp[c] > 1) throw Error("dual graph is disconnected; embedding is not planar");
  }

  std::vector<char> oriented(m, 0);
  for (int p = 0; p < m; ++p) oriented[p] = tree[p];
  auto agrees = [&](int dart) { return (dart % 2 == 0) == (out.forward[dart / 2] != 0); };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int f = *it;
    const int p = parent_edge[f];
    if (p < 0) continue;
    int count = 0, own = -1;
    for (int d : out.faces[f]) {
      if (d / 2 == p) {
        own = d;
      } else if (oriented[d / 2]) {
        count += agrees(d);
      } else {
        throw Error("face has two unoriented edges; dual tree is inconsistent");
      }
    }
    const bool want_along = count % 2 == 0;
    out.forward[p] = (own % 2 == 0) == want_along;
    oriented[p] = 1;
  }

  out.along.assign(nf, 0);
  for (int f = 0; f < nf; ++f) {
    for (int d : out.faces[f]) out.along[f] += agrees(d);
  }
  for (int f = 0; f < nf; ++f) {
    if (std::find(out.root_faces.begin(), out.root_faces.end(), f) != out.root_faces.end()) continue;
    if (out.along[f] % 2 == 0) throw Error("Kasteleyn certificate failed on face " + std::to_string(f));
  }
  return out;
}

std::vector<std::vector<int>> kasteleyn_matrix(const Graph& g, const KasteleynOrientation& o) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  const auto edges = g.edges();
  for (int p = 0; p < g.num_edges(); ++p) {
    VertexId from = o.forward[p] ? edges[p].u : edges[p].v;
    VertexId to = o.forward[p] ? edges[p].v : edges[p].u;
    a[from][to] = 1;
    a[to][from] = -1;
  }
  return a;
}

BigInt pfaffian(const std::vector<std::vector<int>>& in) {
  using Q = mp::cpp_rational;
  const int n = static_cast<int>(in.size());
  if (n % 2) return 0;
  std::vector<std::vector<Q>> a(n, std::vector<Q>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = in[i][j];
  }
  Q pf = 1;
  for (int k = 0; k + 1 < n; k += 2) {
    int piv = -1;
    for (int j = k + 1; j < n; ++j) {
      if (a[k][j] != 0) {
        piv = j;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != k + 1) {
      std::swap(a[k + 1], a[piv]);
      for (auto& row : a) std::swap(row[k + 1], row[piv]);
      pf = -pf;
    }
    const Q pivot = a[k][k + 1];
    pf *= pivot;
    std::vector<Q> tau(n);
    for (int i = k + 2; i < n; ++i) tau[i] = a[k][i] / pivot;
    for (int i = k + 2; i < n; ++i) {
      for (int j = k + 2; j < n; ++j) {
        if (tau[i] != 0) a[i][j] -= tau[i] * a[k + 1][j];
        if (tau[j] != 0) a[i][j] += tau[j] * a[k + 1][i];
      }
    }
  }
  if (mp::denominator(pf) != 1) throw Error("Pfaffian elimination produced a non-integer");
  return mp::numerator(pf);
}

BigInt determinant_bareiss(const std::vector<std::vector<int>>& in) {
  const int n = static_cast<int>(in.size());
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = in[i][j];
  }
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BigInt count_pm_fkt(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return 1;
  if (n % 2) return 0;
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) == 0) return 0;
  }
  KasteleynOrientation o = kasteleyn_orientation(g);
  return mp::abs(pfaffian(kasteleyn_matrix(g, o)));
}

// ---------------------------------------------------------------------------
// Ryser

BigInt count_pm_ryser(const Graph& g) {
  Bipartition sides;
  if (g.bipartition()) {
    sides = *g.bipartition();
  } else if (auto found = find_bipartition(g)) {
    sides = *found;
  } else {
    throw std::invalid_argument("ryser needs a bipartite graph");
  }
  std::vector<int> index(g.num_vertices());
  int left = 0, right = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) index[v] = sides[v] == 0 ? left++ : right++;
  if (left != right) return 0;
  const int k = left;
  if (k == 0) return 1;
  if (k > kRyserSideCap) throw CapExceeded("ryser side size " + std::to_string(k) + " exceeds cap");

  // Column j as a row-incidence list.
  std::vector<std::vector<int>> col(k);
  for (const Edge& e : g.edges()) {
    VertexId l = sides[e.u] == 0 ? e.u : e.v;
    VertexId r = e.other(l);
    col[index[r]].push_back(index[l]);
  }

  // perm = sum_S (-1)^(k-|S|) prod_i rowsum_S(i). Every value below 2^127 by
  // 30! < 2^127, so wrap-around arithmetic modulo 2^128 is exact.
  using U = unsigned __int128;
  std::vector<int> rowsum(k, 0);
  int zeros = k;
  U total = 0;
  std::uint64_t gray = 0;
  for (std::uint64_t s = 1; s < (1ULL << k); ++s) {
    const int j = __builtin_ctzll(s);
    const std::uint64_t next = gray ^ (1ULL << j);
    const int delta = (next >> j) & 1ULL ? 1 : -1;
    for (int i : col[j]) {
      if (rowsum[i] == 0) --zeros;
      rowsum[i] += delta;
      if (rowsum[i] == 0) ++zeros;
    }
    gray = next;
    if (zeros) continue;
    U prod = 1;
    for (int i = 0; i < k; ++i) prod *= static_cast<U>(rowsum[i]);
    const int size = __builtin_popcountll(gray);
    if ((k - size) % 2) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  BigInt out = static_cast<std::uint64_t>(total >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(total);
  return out;
}

// ---------------------------------------------------------------------------

bool CountOracle::applicable(CountMethod method, const Graph& g) {
  switch (method) {
    case CountMethod::kAuto:
    case CountMethod::kEnumerate: return true;
    case CountMethod::kFkt: return g.embedding().has_value();
    case CountMethod::kRyser: return g.bipartition().has_value() || find_bipartition(g).has_value();
  }
  return false;
}

BigInt CountOracle::count(const Graph& g) const {
  switch (method_) {
    case CountMethod::kFkt: return count_pm_fkt(g);
    case CountMethod::kRyser: return count_pm_ryser(g);
    case CountMethod::kEnumerate: return count_pm_enumerate(g);
    case CountMethod::kAuto: return make_oracle(g).count(g);
  }
  return 0;
}

CountOracle make_oracle(const Graph& g, CountMethod preference) {
  if (preference == CountMethod::kAuto) {
    if (g.embedding()) return CountOracle(CountMethod::kFkt);
    if (CountOracle::applicable(CountMethod::kRyser, g)) return CountOracle(CountMethod::kRyser);
    return CountOracle(CountMethod::kEnumerate);
  }
  if (!CountOracle::applicable(preference, g)) {
    throw std::invalid_argument(std::string("counting method '") + to_string(preference) +
                                "' does not apply to this graph");
  }
  return CountOracle(preference);
}

}  // namespace matchlab
