#include "matchlab/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace matchlab {

namespace {

template <class Key>
Real lookup(const std::vector<Key>& support, const std::vector<Real>& probs, const Key& k) {
  auto it = std::lower_bound(support.begin(), support.end(), k);
  if (it == support.end() || *it != k) return 0;
  return probs[it - support.begin()];
}

std::string format_prob(Real p) {
  std::ostringstream os;
  os << std::setprecision(18) << p;
  return os.str();
}

}  // namespace

Real MatchingDistribution::probability(const Matching& m) const { return lookup(support, probs, m); }

Real MatchingDistribution::mean_size() const {
  Real s = 0;
  for (std::size_t i = 0; i < support.size(); ++i) s += probs[i] * support[i].size();
  return s;
}

Real VertexDistribution::probability(const VertexSet& s) const { return lookup(support, probs, s); }

MatchingDistribution exact_gibbs(const Graph& g, Real lambda, const Pinning* pinning, std::uint64_t cap) {
  if (!(lambda >= 0)) throw std::invalid_argument("lambda must be nonnegative");
  MatchingDistribution d;
  d.lambda = lambda;
  for_each_matching(g, pinning, cap, [&](const std::vector<EdgeId>& m) { d.support.push_back(Matching{m}); });
  if (d.support.empty()) throw UnsatisfiablePinning("pinning admits no matching");

  if (lambda == 0) {
    // Only the smallest matchings in the support survive the limit.
    std::size_t smallest = d.support.front().size();
    for (const auto& m : d.support) smallest = std::min(smallest, m.size());
    Real count = 0;
    for (const auto& m : d.support) count += m.size() == smallest;
    for (const auto& m : d.support) d.probs.push_back(m.size() == smallest ? 1 / count : 0);
    return d;
  }

  std::size_t largest = 0;
  for (const auto& m : d.support) largest = std::max(largest, m.size());
  // lambda^(|M| - largest) keeps the weights in range for big lambda.
  std::vector<Real> power(largest + 1);
  for (std::size_t k = 0; k <= largest; ++k) {
    power[k] = std::pow(lambda, static_cast<Real>(k) - static_cast<Real>(lambda > 1 ? largest : 0));
  }
  Real z = 0;
  for (const auto& m : d.support) z += power[m.size()];
  for (const auto& m : d.support) d.probs.push_back(power[m.size()] / z);
  return d;
}

MatchingDistribution project_out(const MatchingDistribution& d, std::span<const EdgeId> drop) {
  std::map<Matching, Real> merged;
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    Matching m;
    for (EdgeId e : d.support[i].edges) {
      if (std::find(drop.begin(), drop.end(), e) == drop.end()) m.edges.push_back(e);
    }
    merged[m] += d.probs[i];
  }
  MatchingDistribution out;
  out.lambda = d.lambda;
  for (auto& [m, p] : merged) {
    out.support.push_back(m);
    out.probs.push_back(p);
  }
  return out;
}

VertexDistribution push_forward(const Graph& host, const MatchingDistribution& d, const VertexSet* scope) {
  std::map<VertexSet, Real> merged;
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    VertexSet s = covered_vertices(host, d.support[i]);
    if (scope) {
      VertexSet kept;
      for (VertexId v : s.vertices) {
        if (scope->contains(v)) kept.vertices.push_back(v);
      }
      s = std::move(kept);
    }
    merged[s] += d.probs[i];
  }
  VertexDistribution out;
  for (auto& [s, p] : merged) {
    out.support.push_back(s);
    out.probs.push_back(p);
  }
  return out;
}

VertexDistribution vertex_gibbs_exact(const Graph& g, Real lambda, const Pinning* pinning, const VertexSet* scope,
                                      std::uint64_t cap) {
  return push_forward(g, exact_gibbs(g, lambda, pinning, cap), scope);
}

Real marginal_probability(const Graph& g, Real lambda, const Pinning& event) {
  MatchingDistribution d = exact_gibbs(g, lambda);
  Real p = 0;
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    if (event.satisfied_by(g, d.support[i])) p += d.probs[i];
  }
  return p;
}

void write_csv(std::ostream& os, const MatchingDistribution& d) {
  os << "matching,probability\n";
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    os << to_string(d.support[i]) << ',' << format_prob(d.probs[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const VertexDistribution& d) {
  os << "vertices,probability\n";
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    os << to_string(d.support[i]) << ',' << format_prob(d.probs[i]) << '\n';
  }
}

}  // namespace matchlab
