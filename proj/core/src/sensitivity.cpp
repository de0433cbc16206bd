#include "matchlab/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "matchlab/glauber_edge.hpp"

namespace matchlab {

namespace {

constexpr Real kTol = 1e-9L;

MatchingDistribution conditional(const Graph& g, Real lambda, const Pinning* tau, const Pinning& extra) {
  Pinning p = tau ? combine(*tau, extra) : extra.normalized();
  return exact_gibbs(g, lambda, &p);
}

}  // namespace

SensitivityReport edge_sensitivity_exact(const Graph& g, Real lambda) {
  SensitivityReport rep;
  rep.lambda = lambda;
  rep.delta_max = g.max_degree();
  rep.bound = 1 + 2 * lambda * rep.delta_max;
  const MatchingDistribution base = exact_gibbs(g, lambda);
  for (const Edge& e : g.edges()) {
    EdgeSensitivity row{e.id, 0, 0};
    row.deletion = wasserstein_distance(g, base, exact_gibbs(remove_edge(g, e.id), lambda), Metric::kEdge);
    const auto in = Pinning::edge_in(e.id);
    const auto out = Pinning::edge_out(e.id);
    row.pinning = wasserstein_distance(g, exact_gibbs(g, lambda, &in), exact_gibbs(g, lambda, &out), Metric::kEdge);
    rep.max_deletion = std::max(rep.max_deletion, row.deletion);
    rep.max_pinning = std::max(rep.max_pinning, row.pinning);
    rep.rows.push_back(row);
  }
  rep.pass = rep.max_deletion <= rep.bound + kTol && rep.max_pinning <= rep.bound + kTol;
  return rep;
}

std::optional<VertexId> pendant_endpoint(const Graph& g, EdgeId e) {
  const Edge& ed = g.edge(e);
  if (g.degree(ed.u) == 1) return ed.u;
  if (g.degree(ed.v) == 1) return ed.v;
  return std::nullopt;
}

Real pinning_distance_exact(const Graph& g, Real lambda, const PinningQuery& q) {
  if (!g.has_edge(q.edge)) throw std::invalid_argument("unknown edge " + std::to_string(q.edge));
  MatchingDistribution plus = conditional(g, lambda, q.tau, Pinning::edge_in(q.edge));
  MatchingDistribution minus = conditional(g, lambda, q.tau, Pinning::edge_out(q.edge));
  if (q.metric == Metric::kEdge) {
    if (q.restricted) {
      const EdgeId drop[] = {q.edge};
      plus = project_out(plus, drop);
      minus = project_out(minus, drop);
    }
    return wasserstein_distance(g, plus, minus, Metric::kEdge);
  }
  VertexSet scope;
  if (q.restricted) {
    VertexId u = q.scope_vertex;
    if (u < 0) u = pendant_endpoint(g, q.edge).value_or(g.edge(q.edge).u);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (v != u) scope.vertices.push_back(v);
    }
  }
  const VertexSet* s = q.restricted ? &scope : nullptr;
  return wasserstein_distance(push_forward(g, plus, s), push_forward(g, minus, s));
}

Real vertex_pinning_distance_exact(const Graph& g, Real lambda, VertexId v, const Pinning* tau) {
  MatchingDistribution plus = conditional(g, lambda, tau, Pinning::vertex_in(v));
  MatchingDistribution minus = conditional(g, lambda, tau, Pinning::vertex_out(v));
  return wasserstein_distance(push_forward(g, plus), push_forward(g, minus));
}

InfluenceMatrix influence_spectral_norm(const Graph& g, Real lambda, const Pinning& pinning) {
  const int n = g.num_vertices();
  const VertexDistribution d = vertex_gibbs_exact(g, lambda, &pinning);
  std::vector<Real> p1(n, 0);
  std::vector<std::vector<Real>> p2(n, std::vector<Real>(n, 0));
  for (std::size_t k = 0; k < d.size(); ++k) {
    const auto& vs = d.support[k].vertices;
    for (VertexId i : vs) {
      p1[i] += d.probs[k];
      for (VertexId j : vs) p2[i][j] += d.probs[k];
    }
  }
  constexpr Real kDegenerate = 1e-15L;
  std::vector<char> live(n);
  for (int i = 0; i < n; ++i) live[i] = p1[i] > kDegenerate && p1[i] < 1 - kDegenerate;

  InfluenceMatrix out;
  out.pinning = pinning;
  out.psi.assign(n, std::vector<Real>(n, 0));
  for (int i = 0; i < n; ++i) {
    if (!live[i]) continue;
    for (int j = 0; j < n; ++j) out.psi[i][j] = p2[i][j] / p1[i] - (p1[j] - p2[i][j]) / (1 - p1[i]);
  }

  // Psi = D^-1 C with D the variances, similar to the symmetric D^-1/2 C D^-1/2.
  std::vector<int> idx;
  for (int i = 0; i < n; ++i) {
    if (live[i]) idx.push_back(i);
  }
  const int k = static_cast<int>(idx.size());
  if (k == 0) return out;
  Eigen::MatrixXd s(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const int i = idx[a], j = idx[b];
      const Real cov = p2[i][j] - p1[i] * p1[j];
      s(a, b) = static_cast<double>(cov / std::sqrt(p1[i] * (1 - p1[i]) * p1[j] * (1 - p1[j])));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  out.norm = es.eigenvalues()(k - 1);
  return out;
}

void BoundTally::record(Real value, Real bound, Real tol) {
  ++checks;
  max_value = std::max(max_value, value);
  max_excess = std::max(max_excess, value - bound);
  if (value > bound + tol) ++violations;
}

std::vector<Pinning> audit_pinnings(const Graph& g, const std::vector<VertexId>& free, int count,
                                    int exhaustive_limit, Rng& rng) {
  std::vector<Pinning> out;
  long long total = 1;
  for (std::size_t i = 0; i < free.size() && total <= exhaustive_limit; ++i) total *= 3;
  if (total <= exhaustive_limit) {
    for (long long code = 0; code < total; ++code) {
      Pinning p;
      long long c = code;
      for (VertexId v : free) {
        if (c % 3 == 1) p.vertex_positive.push_back(v);
        if (c % 3 == 2) p.vertex_negative.push_back(v);
        c /= 3;
      }
      out.push_back(p);
    }
    return out;
  }
  const auto matchings = enumerate_matchings(g);
  out.push_back(Pinning{});
  while (static_cast<int>(out.size()) < count) {
    const Matching& m = matchings[rng.below(matchings.size())];
    const VertexSet cov = covered_vertices(g, m);
    Pinning p;
    for (VertexId v : free) {
      if (rng() & 1ULL) continue;
      (cov.contains(v) ? p.vertex_positive : p.vertex_negative).push_back(v);
    }
    out.push_back(p);
  }
  return out;
}

KappaAuditReport kappa_bounds_audit(const std::vector<Graph>& corpus, Real lambda, const KappaAuditOptions& opt) {
  KappaAuditReport rep;
  rep.lambda = lambda;
  Rng root(opt.seed);
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const Graph& g = corpus[gi];
    Rng rng = root.split(gi);
    const int n = g.num_vertices();
    const Real delta = g.max_degree();

    for (const Edge& e : g.edges()) {
      auto u = pendant_endpoint(g, e.id);
      if (!u) continue;
      PinningQuery q;
      q.edge = e.id;
      q.restricted = true;
      q.metric = Metric::kEdge;
      rep.pendant_edge.record(pinning_distance_exact(g, lambda, q), lambda * delta, kTol);

      const VertexId v = e.other(*u);
      std::vector<VertexId> free;
      for (VertexId w = 0; w < n; ++w) {
        if (w != *u && w != v) free.push_back(w);
      }
      q.metric = Metric::kVertex;
      q.scope_vertex = *u;
      for (const Pinning& tau : audit_pinnings(g, free, opt.pinnings_per_instance, opt.exhaustive_limit, rng)) {
        q.tau = &tau;
        try {
          rep.pendant_vertex.record(pinning_distance_exact(g, lambda, q), 1, kTol);
        } catch (const UnsatisfiablePinning&) {
          ++rep.skipped_pinnings;
        }
      }
    }

    for (VertexId v = 0; v < n; ++v) {
      std::vector<VertexId> free;
      for (VertexId w = 0; w < n; ++w) {
        if (w != v) free.push_back(w);
      }
      for (const Pinning& tau : audit_pinnings(g, free, opt.pinnings_per_instance, opt.exhaustive_limit, rng)) {
        try {
          rep.full_vertex.record(vertex_pinning_distance_exact(g, lambda, v, &tau), 2, kTol);
        } catch (const UnsatisfiablePinning&) {
          ++rep.skipped_pinnings;
        }
      }
    }

    if (opt.influence) {
      std::vector<VertexId> all(n);
      for (VertexId v = 0; v < n; ++v) all[v] = v;
      for (const Pinning& tau : audit_pinnings(g, all, opt.pinnings_per_instance, opt.exhaustive_limit, rng)) {
        try {
          rep.influence.record(influence_spectral_norm(g, lambda, tau).norm, 2, kTol);
        } catch (const UnsatisfiablePinning&) {
          ++rep.skipped_pinnings;
        }
      }
    }
  }
  return rep;
}

CoupledEstimate coupled_sensitivity_estimate(const Graph& g, EdgeId e, double lambda, std::uint64_t steps,
                                             std::uint64_t samples, std::uint64_t seed) {
  const bool present = g.has_edge(e);
  const Graph h = present ? remove_edge(g, e) : g;
  const Rng root(seed);
  const auto m = static_cast<std::uint64_t>(g.num_edges());
  Real sum = 0, sum_sq = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    Rng rng = root.split(k);
    EdgeChain a(g, lambda, Rng(0));
    EdgeChain b(h, lambda, Rng(0));
    if (m > 0) {
      for (std::uint64_t s = 0; s < steps; ++s) {
        const auto prod = static_cast<unsigned __int128>(rng()) * m;
        const int p = static_cast<int>(prod >> 64);
        const auto u = static_cast<std::uint64_t>(prod);
        a.apply(p, u);
        const EdgeId id = g.edges()[p].id;
        if (id != e) b.apply(h.position(id), u);
      }
    }
    const Real d = symmetric_difference_size(a.current().edges, b.current().edges);
    sum += d;
    sum_sq += d * d;
  }
  CoupledEstimate out;
  out.samples = samples;
  if (samples == 0) return out;
  out.mean = sum / samples;
  if (samples > 1) {
    const Real var = std::max<Real>(0, (sum_sq - sum * sum / samples) / (samples - 1));
    out.standard_error = std::sqrt(var / samples);
  }
  return out;
}

}  // namespace matchlab
