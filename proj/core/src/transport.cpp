#include "matchlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace matchlab {

namespace {

constexpr Real kMassEps = 1e-16L;

int vertex_hamming(const Graph& host, const Matching& a, const Matching& b) {
  auto va = covered_vertices(host, a);
  auto vb = covered_vertices(host, b);
  return symmetric_difference_size(va.vertices, vb.vertices);
}

void check_hosted(const Graph& host, std::span<const Matching> ms) {
  for (const auto& m : ms) {
    for (EdgeId e : m.edges) {
      if (!host.has_edge(e)) throw std::invalid_argument("matching edge " + std::to_string(e) + " not in host graph");
    }
  }
}

template <class Key>
TransportProblem union_problem(const std::vector<Key>& sa, const std::vector<Real>& pa, const std::vector<Key>& sb,
                               const std::vector<Real>& pb, std::vector<Key>& joint) {
  std::map<Key, std::pair<Real, Real>> mass;
  for (std::size_t i = 0; i < sa.size(); ++i) mass[sa[i]].first += pa[i];
  for (std::size_t i = 0; i < sb.size(); ++i) mass[sb[i]].second += pb[i];
  TransportProblem pr;
  for (auto& [k, m] : mass) {
    joint.push_back(k);
    pr.p.push_back(m.first);
    pr.q.push_back(m.second);
  }
  return pr;
}

}  // namespace

CostMatrix hamming_cost(const Graph& host, std::span<const Matching> a, std::span<const Matching> b, Metric metric) {
  check_hosted(host, a);
  check_hosted(host, b);
  CostMatrix c(a.size(), std::vector<Real>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i][j] = metric == Metric::kEdge ? symmetric_difference_size(a[i].edges, b[j].edges)
                                        : vertex_hamming(host, a[i], b[j]);
    }
  }
  return c;
}

CostMatrix hamming_cost(std::span<const VertexSet> a, std::span<const VertexSet> b) {
  CostMatrix c(a.size(), std::vector<Real>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i][j] = symmetric_difference_size(a[i].vertices, b[j].vertices);
  }
  return c;
}

TransportProblem make_problem(const Graph& host, const MatchingDistribution& a, const MatchingDistribution& b,
                              Metric metric) {
  std::vector<Matching> joint;
  TransportProblem pr = union_problem(a.support, a.probs, b.support, b.probs, joint);
  pr.cost = hamming_cost(host, joint, joint, metric);
  return pr;
}

TransportProblem make_problem(const VertexDistribution& a, const VertexDistribution& b) {
  std::vector<VertexSet> joint;
  TransportProblem pr = union_problem(a.support, a.probs, b.support, b.probs, joint);
  pr.cost = hamming_cost(joint, joint);
  return pr;
}

TransportResult wasserstein(const TransportProblem& problem) {
  const std::size_t na = problem.p.size(), nb = problem.q.size();
  if (problem.cost.size() != na) throw std::invalid_argument("cost rows do not match p");
  for (const auto& row : problem.cost) {
    if (row.size() != nb) throw std::invalid_argument("cost columns do not match q");
    for (Real c : row) {
      if (!(c >= 0)) throw std::invalid_argument("negative or NaN cost");
    }
  }
  for (Real x : problem.p) {
    if (!(x >= 0)) throw std::invalid_argument("negative mass in p");
  }
  for (Real x : problem.q) {
    if (!(x >= 0)) throw std::invalid_argument("negative mass in q");
  }

  // Work on the positive-mass rows and columns only.
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < na; ++i) {
    if (problem.p[i] > kMassEps) rows.push_back(i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (problem.q[j] > kMassEps) cols.push_back(j);
  }
  const std::size_t a = rows.size(), b = cols.size();
  std::vector<Real> supply(a), demand(b);
  for (std::size_t i = 0; i < a; ++i) supply[i] = problem.p[rows[i]];
  for (std::size_t j = 0; j < b; ++j) demand[j] = problem.q[cols[j]];
  auto cost = [&](std::size_t i, std::size_t j) { return problem.cost[rows[i]][cols[j]]; };

  std::vector<std::vector<Real>> flow(a, std::vector<Real>(b, 0));
  // Potentials: rows 0..a-1, columns a..a+b-1. Rows with supply left keep potential 0.
  std::vector<Real> pi(a + b, 0);
  constexpr Real kInf = std::numeric_limits<Real>::infinity();
  std::vector<Real> dist(a + b);
  std::vector<long> parent(a + b);
  std::vector<char> done(a + b);

  auto total = [](const std::vector<Real>& v) {
    Real s = 0;
    for (Real x : v) s += x;
    return s;
  };

  while (a > 0 && b > 0 && total(supply) > 1e-14L && total(demand) > 1e-14L) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < a; ++i) {
      if (supply[i] > kMassEps) dist[i] = 0;
    }
    // Dense Dijkstra on reduced costs.
    for (;;) {
      long u = -1;
      for (std::size_t v = 0; v < a + b; ++v) {
        if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = static_cast<long>(v);
      }
      if (u < 0) break;
      done[u] = 1;
      if (static_cast<std::size_t>(u) < a) {
        for (std::size_t j = 0; j < b; ++j) {
          Real nd = dist[u] + std::max<Real>(0, cost(u, j) + pi[u] - pi[a + j]);
          if (nd < dist[a + j]) {
            dist[a + j] = nd;
            parent[a + j] = u;
          }
        }
      } else {
        std::size_t j = u - a;
        for (std::size_t i = 0; i < a; ++i) {
          if (flow[i][j] <= kMassEps) continue;
          Real nd = dist[u] + std::max<Real>(0, -cost(i, j) + pi[u] - pi[i]);
          if (nd < dist[i]) {
            dist[i] = nd;
            parent[i] = u;
          }
        }
      }
    }

    long target = -1;
    for (std::size_t j = 0; j < b; ++j) {
      if (demand[j] <= kMassEps || dist[a + j] == kInf) continue;
      if (target < 0 || dist[a + j] + pi[a + j] < dist[target] + pi[target]) target = static_cast<long>(a + j);
    }
    if (target < 0) throw Error("transport solver found no augmenting path");

    Real bottleneck = demand[target - a];
    long v = target;
    while (parent[v] >= 0) {
      long u = parent[v];
      if (v < static_cast<long>(a)) bottleneck = std::min(bottleneck, flow[v][u - a]);
      v = u;
    }
    bottleneck = std::min(bottleneck, supply[v]);

    const Real cap = dist[target];
    for (std::size_t w = 0; w < a + b; ++w) pi[w] += std::min(dist[w], cap);

    long x = target;
    while (parent[x] >= 0) {
      long u = parent[x];
      if (x >= static_cast<long>(a)) {
        flow[u][x - a] += bottleneck;
      } else {
        flow[x][u - a] -= bottleneck;
        if (flow[x][u - a] < kMassEps) flow[x][u - a] = 0;
      }
      x = u;
    }
    supply[x] -= bottleneck;
    if (supply[x] < kMassEps) supply[x] = 0;
    demand[target - a] -= bottleneck;
    if (demand[target - a] < kMassEps) demand[target - a] = 0;
  }

  TransportResult res;
  res.coupling.assign(na, std::vector<Real>(nb, 0));
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      res.coupling[rows[i]][cols[j]] = flow[i][j];
      res.value += flow[i][j] * cost(i, j);
    }
  }

  // Reduced costs are nonnegative on every residual arc and zero on arcs
  // carrying flow, so u = -pi(row), v = pi(col) is dual optimal.
  res.row_dual.assign(na, kInf);
  res.col_dual.assign(nb, kInf);
  for (std::size_t i = 0; i < a; ++i) res.row_dual[rows[i]] = -pi[i];
  for (std::size_t j = 0; j < b; ++j) res.col_dual[cols[j]] = pi[a + j];
  for (std::size_t j = 0; j < nb; ++j) {
    if (res.col_dual[j] != kInf) continue;
    Real best = kInf;
    for (std::size_t i : rows) best = std::min(best, problem.cost[i][j] - res.row_dual[i]);
    res.col_dual[j] = rows.empty() ? 0 : best;
  }
  for (std::size_t i = 0; i < na; ++i) {
    if (res.row_dual[i] != kInf) continue;
    Real best = kInf;
    for (std::size_t j = 0; j < nb; ++j) best = std::min(best, problem.cost[i][j] - res.col_dual[j]);
    res.row_dual[i] = nb == 0 ? 0 : best;
  }
  for (std::size_t i = 0; i < na; ++i) res.dual_value += problem.p[i] * res.row_dual[i];
  for (std::size_t j = 0; j < nb; ++j) res.dual_value += problem.q[j] * res.col_dual[j];
  return res;
}

Real wasserstein_distance(const Graph& host, const MatchingDistribution& a, const MatchingDistribution& b,
                          Metric metric) {
  return wasserstein(make_problem(host, a, b, metric)).value;
}

Real wasserstein_distance(const VertexDistribution& a, const VertexDistribution& b) {
  return wasserstein(make_problem(a, b)).value;
}

LipschitzViolation::LipschitzViolation(std::size_t a, std::size_t b, Real gap)
    : Error("potential is not 1-Lipschitz on pair (" + std::to_string(a) + ", " + std::to_string(b) +
            "), excess " + std::to_string(static_cast<double>(gap))),
      first(a),
      second(b) {}

Real kr_dual_bound(const TransportProblem& problem, std::span<const Real> f) {
  const std::size_t n = problem.p.size();
  if (problem.q.size() != n || problem.cost.size() != n || f.size() != n) {
    throw std::invalid_argument("kr_dual_bound needs a square problem over a joint support");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Real excess = std::fabs(f[i] - f[j]) - problem.cost[i][j];
      if (excess > 1e-12L) throw LipschitzViolation(i, j, excess);
    }
  }
  Real s = 0;
  for (std::size_t i = 0; i < n; ++i) s += f[i] * (problem.p[i] - problem.q[i]);
  return s;
}

std::vector<Real> kr_potential(const TransportProblem& problem, const TransportResult& result) {
  const std::size_t n = problem.p.size();
  std::vector<Real> f(n, 0);
  for (std::size_t z = 0; z < n; ++z) {
    Real best = std::numeric_limits<Real>::infinity();
    for (std::size_t j = 0; j < problem.q.size(); ++j) {
      if (problem.q[j] > kMassEps) best = std::min(best, problem.cost[z][j] - result.col_dual[j]);
    }
    f[z] = std::isinf(best) ? 0 : best;
  }
  return f;
}

}  // namespace matchlab
