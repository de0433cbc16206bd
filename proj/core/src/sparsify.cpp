#include "matchlab/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "matchlab/matching.hpp"
#include "matchlab/rng.hpp"

namespace matchlab {

Real FractionalMatching::total() const {
  Real s = 0;
  for (Real v : x) s += v;
  return s;
}

Real FractionalMatching::max_violation(const Graph& g) const {
  std::vector<Real> load(g.num_vertices(), 0);
  const auto edges = g.edges();
  for (std::size_t p = 0; p < edges.size(); ++p) {
    load[edges[p].u] += x[p];
    load[edges[p].v] += x[p];
  }
  Real worst = -1;
  for (Real l : load) worst = std::max(worst, l - 1);
  return worst;
}

namespace {

Real xlogx(Real v) { return v > 0 ? v * std::log(v) : 0; }

Real objective_unchecked(const FractionalMatching& x, Real alpha) {
  Real s = 0;
  for (Real v : x.x) s += v - 2 * alpha * xlogx(v);
  return s;
}

LpSolution solve_degree_lp(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::pair<VertexId, VertexId>> cover;
  for (const Edge& e : g.edges()) {
    cover.push_back({e.u, n + e.v});
    cover.push_back({e.v, n + e.u});
  }
  Graph dc(2 * n, cover);
  Bipartition sides(2 * n, 0);
  for (int v = n; v < 2 * n; ++v) sides[v] = 1;
  Matching m = hopcroft_karp(dc, sides);
  LpSolution sol;
  sol.x.x.assign(g.num_edges(), 0);
  for (EdgeId id : m.edges) sol.x.x[id / 2] += 0.5L;
  sol.objective = sol.x.total();
  sol.dual_bound = sol.objective;
  sol.converged = true;
  return sol;
}

}  // namespace

Real regularized_objective(const Graph& g, const FractionalMatching& x, Real alpha) {
  if (x.x.size() != static_cast<std::size_t>(g.num_edges())) throw std::invalid_argument("weight vector size mismatch");
  for (Real v : x.x) {
    if (!(v >= 0)) throw std::invalid_argument("negative edge weight");
  }
  if (x.max_violation(g) > 1e-8L) throw std::invalid_argument("weights violate a degree constraint");
  return objective_unchecked(x, alpha);
}

LpSolution solve_regularized_lp(const Graph& g, Real alpha, const LpOptions& opt) {
  if (!(alpha >= 0)) throw std::invalid_argument("alpha must be nonnegative");
  if (!(opt.tol > 0)) throw std::invalid_argument("tol must be positive");
  if (alpha == 0) return solve_degree_lp(g);

  const int n = g.num_vertices();
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  std::vector<std::vector<std::pair<int, VertexId>>> inc(n);  // (position, other endpoint)
  for (std::size_t p = 0; p < m; ++p) {
    inc[edges[p].u].push_back({static_cast<int>(p), edges[p].v});
    inc[edges[p].v].push_back({static_cast<int>(p), edges[p].u});
  }
  const Real inv = 1 / (2 * alpha);
  std::vector<Real> y(n, 0);
  std::vector<Real> a;

  auto primal = [&](FractionalMatching& raw) {
    raw.x.resize(m);
    for (std::size_t p = 0; p < m; ++p) raw.x[p] = std::exp((1 - y[edges[p].u] - y[edges[p].v]) * inv - 1);
  };

  LpSolution sol;
  FractionalMatching raw;
  Real best_gap = std::numeric_limits<Real>::infinity();
  for (std::uint64_t sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    for (VertexId v = 0; v < n; ++v) {
      if (inc[v].empty()) continue;
      a.clear();
      Real top = -std::numeric_limits<Real>::infinity();
      for (auto [p, w] : inc[v]) {
        a.push_back((1 - y[w]) * inv - 1);
        top = std::max(top, a.back());
      }
      Real s = 0;
      for (Real t : a) s += std::exp(t - top);
      y[v] = std::max<Real>(0, 2 * alpha * (top + std::log(s)));
    }
    if (sweep % 5 != 0 && sweep != opt.max_sweeps) continue;

    primal(raw);
    Real dual = 0;
    for (Real t : y) dual += t;
    dual += 2 * alpha * raw.total();

    std::vector<Real> load(n, 0);
    for (std::size_t p = 0; p < m; ++p) {
      load[edges[p].u] += raw.x[p];
      load[edges[p].v] += raw.x[p];
    }
    FractionalMatching rounded = raw;
    for (std::size_t p = 0; p < m; ++p) {
      rounded.x[p] /= std::max<Real>({1, load[edges[p].u], load[edges[p].v]});
    }
    const Real obj = objective_unchecked(rounded, alpha);
    const Real gap = dual - obj;
    if (gap < best_gap) {
      best_gap = gap;
      sol.x = rounded;
      sol.objective = obj;
      sol.dual_bound = dual;
      sol.gap = gap;
    }
    sol.sweeps = sweep;
    if (gap <= opt.tol) {
      sol.converged = true;
      break;
    }
  }
  if (m == 0) {
    sol.converged = true;
    sol.gap = 0;
  }
  return sol;
}

Real sparsifier_gamma(const SparsifierParams& params, int n) {
  const double ln_n = std::log(static_cast<double>(std::max(n, 2)));
  return params.epsilon * params.epsilon / (320.0 * std::max(1.0, params.c) * ln_n);
}

std::vector<Real> retention_probabilities(const Graph& g, const FractionalMatching& x, const SparsifierParams& params) {
  const Real gamma = sparsifier_gamma(params, g.num_vertices());
  std::vector<Real> p(g.num_edges());
  for (int i = 0; i < g.num_edges(); ++i) p[i] = std::min<Real>(1, x.x[i] / gamma);
  return p;
}

Graph sample_sparsifier(const Graph& g, const FractionalMatching& x, const SparsifierParams& params,
                        std::uint64_t seed) {
  const auto p = retention_probabilities(g, x, params);
  const Rng root(seed);
  std::vector<EdgeId> drop;
  for (int i = 0; i < g.num_edges(); ++i) {
    const EdgeId id = g.edges()[i].id;
    if (!(root.split(static_cast<std::uint64_t>(id)).uniform() < p[i])) drop.push_back(id);
  }
  return remove_edges(g, drop);
}

SparsifierReport sparsifier_report(const Graph& g, const Graph& h, double epsilon,
                                   const SparsifierThresholds& thresholds) {
  for (const Edge& e : h.edges()) {
    if (!g.has_edge(e.id) || g.edge(e.id).u != e.u || g.edge(e.id).v != e.v) {
      throw std::invalid_argument("sparsifier is not a subgraph of the input");
    }
  }
  SparsifierReport r;
  r.max_degree_h = h.max_degree();
  r.nu_g = matching_number(g);
  r.nu_h = matching_number(h);
  r.ratio = r.nu_g == 0 ? 1.0 : static_cast<double>(r.nu_h) / r.nu_g;
  r.degree_limit = thresholds.degree_factor / (epsilon * epsilon) * std::log(std::max(2, g.num_vertices()));
  r.ratio_pass = r.ratio >= thresholds.min_ratio;
  r.degree_pass = r.max_degree_h <= r.degree_limit;
  return r;
}

StabilityReport stability_experiment(const Graph& g, Real alpha, Real tol, int trials, std::uint64_t seed,
                                     const SparsifierParams& params) {
  StabilityReport rep;
  rep.n = g.num_vertices();
  rep.m = g.num_edges();
  rep.alpha = alpha;
  if (g.num_edges() == 0) return rep;
  LpOptions opt;
  opt.tol = tol;
  const LpSolution base = solve_regularized_lp(g, alpha, opt);
  rep.base_gap = base.gap;
  const auto p_base = retention_probabilities(g, base.x, params);
  const Real ln_n = std::log(static_cast<Real>(std::max(2, g.num_vertices())));
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const EdgeId e = g.edges()[rng.below(g.num_edges())].id;
    const Graph h = remove_edge(g, e);
    const LpSolution other = solve_regularized_lp(h, alpha, opt);
    const auto p_other = retention_probabilities(h, other.x, params);

    StabilityTrial tr{e, 0, 0, 0, 0};
    std::vector<Real> diff(g.num_edges(), 0);
    for (int i = 0; i < g.num_edges(); ++i) {
      const EdgeId id = g.edges()[i].id;
      const int j = h.position(id);
      const Real xt = j >= 0 ? other.x.x[j] : 0;
      const Real pt = j >= 0 ? p_other[j] : 0;
      diff[i] = std::fabs(xt - base.x.x[i]);
      tr.l1 += diff[i];
      tr.hamming += std::fabs(pt - p_base[i]);
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      Real local = 0;
      for (EdgeId id : g.incident(v)) local += diff[g.position(id)];
      tr.s += local * local;
    }
    tr.scaled = tr.s * alpha / ln_n;
    rep.max_scaled = std::max(rep.max_scaled, tr.scaled);
    rep.mean_scaled += tr.scaled / trials;
    rep.trials.push_back(tr);
  }
  return rep;
}

}  // namespace matchlab
