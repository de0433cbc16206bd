#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "matchlab/graph.hpp"
#include "matchlab/matching.hpp"

namespace matchlab {

/// Explicit Gibbs distribution over matchings, mu(M) proportional to lambda^|M|.
/// Support is in canonical (lexicographic) order and lives in the edge-id
/// space of the host graph.
struct MatchingDistribution {
  std::vector<Matching> support;
  std::vector<Real> probs;
  Real lambda = 1;

  std::size_t size() const { return support.size(); }
  /// 0 for matchings outside the support.
  Real probability(const Matching& m) const;
  Real mean_size() const;
};

/// Law of V(M) (intersected with a scope when one is given).
struct VertexDistribution {
  std::vector<VertexSet> support;
  std::vector<Real> probs;

  std::size_t size() const { return support.size(); }
  Real probability(const VertexSet& s) const;
};

/// Throws UnsatisfiablePinning when no matching meets the pinning and
/// CapExceeded past the enumeration cap.
MatchingDistribution exact_gibbs(const Graph& g, Real lambda, const Pinning* pinning = nullptr,
                                 std::uint64_t cap = kDefaultEnumerationCap);

/// Push-forward M -> M minus `drop`, with merged support in canonical order.
MatchingDistribution project_out(const MatchingDistribution& d, std::span<const EdgeId> drop);

/// Push-forward of exact_gibbs under M -> V(M), or V(M) intersected with
/// `scope` when it is non-null.
VertexDistribution vertex_gibbs_exact(const Graph& g, Real lambda, const Pinning* pinning = nullptr,
                                      const VertexSet* scope = nullptr,
                                      std::uint64_t cap = kDefaultEnumerationCap);

VertexDistribution push_forward(const Graph& host, const MatchingDistribution& d,
                                const VertexSet* scope = nullptr);

/// mu(event) under the unconditioned Gibbs distribution.
Real marginal_probability(const Graph& g, Real lambda, const Pinning& event);

/// Total variation between an explicit law and empirical counts over the
/// same outcome space. Outcomes absent from `law` still contribute.
template <class Key>
Real total_variation(std::span<const Key> support, std::span<const Real> probs,
                     std::span<const Key> observed, std::span<const std::uint64_t> counts);

/// "matching,probability" CSV, one row per support element.
void write_csv(std::ostream& os, const MatchingDistribution& d);
void write_csv(std::ostream& os, const VertexDistribution& d);

}  // namespace matchlab

#include "matchlab/detail/total_variation.hpp"
