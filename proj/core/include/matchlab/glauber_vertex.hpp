#pragma once

#include <cstdint>
#include <list>
#include <unordered_map>
#include <vector>

#include "matchlab/pm_count.hpp"
#include "matchlab/rng.hpp"

namespace matchlab {

struct VertexSchedule {
  std::uint64_t t = 1;
  double delta_tv = 0;
  long double delta_prime = 0;  // per-call error demand on the counting oracle
};

/// t = ceil(n^2/2 (m ln(1+lambda) + ln(3/delta))), delta' = ln(1 + delta/3) / t.
VertexSchedule vertex_schedule(int n, int m, double lambda, double delta_tv);

/// Perfect-matching counts of induced subgraphs G[U], memoized by U with a
/// least-recently-used bound on the number of entries.
class PmCache {
 public:
  PmCache(const Graph& g, CountOracle oracle, std::size_t capacity = 1 << 16);
  PmCache(Graph&&, CountOracle, std::size_t = 0) = delete;

  /// `members` is a bitset over the vertices of g, 64 per word.
  const BigInt& count(const std::vector<std::uint64_t>& members);
  BigInt count(const VertexSet& u);

  const Graph& graph() const { return *g_; }
  const CountOracle& oracle() const { return oracle_; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const;
  };
  using Entry = std::pair<std::vector<std::uint64_t>, BigInt>;

  const Graph* g_;
  CountOracle oracle_;
  std::size_t capacity_;
  std::list<Entry> lru_;
  std::unordered_map<std::vector<std::uint64_t>, std::list<Entry>::iterator, Hash> index_;
  std::uint64_t hits_ = 0, misses_ = 0;
};

std::vector<std::uint64_t> to_bits(int n, const VertexSet& u);
VertexSet from_bits(int n, const std::vector<std::uint64_t>& bits);

/// w(U) = lambda^(|U|/2) PM(G[U]); 0 for odd |U|, 1 for the empty set.
Real vertex_weight(const Graph& g, const VertexSet& u, Real lambda, const CountOracle& oracle);

/// 2-vertex Glauber dynamics driven by a counting oracle. A step draws an
/// unordered pair {v1, v2} uniformly, proposes U' = U sym-diff {v1, v2} and
/// accepts with w(U') / (w(U) + w(U')).
class VertexChain {
 public:
  VertexChain(const Graph& g, double lambda, PmCache& cache, Rng rng);
  VertexChain(Graph&&, double, PmCache&, Rng) = delete;

  void step();
  void run(std::uint64_t steps) {
    for (std::uint64_t s = 0; s < steps; ++s) step();
  }

  VertexSet current() const { return from_bits(n_, bits_); }
  const BigInt& current_count() const { return count_; }
  std::uint64_t steps_taken() const { return steps_; }

 private:
  const Graph* g_;
  int n_;
  double lambda_;
  PmCache* cache_;
  Rng rng_;
  std::vector<std::uint64_t> bits_;
  int size_ = 0;
  BigInt count_ = 1;
  std::uint64_t steps_ = 0;
};

/// State after vertex_schedule(n, m, lambda, delta).t steps from the empty set.
VertexSet sample_vertex_set(const Graph& g, double lambda, double delta_tv, PmCache& cache, std::uint64_t seed);
VertexSet sample_vertex_set(const Graph& g, double lambda, double delta_tv, const CountOracle& oracle,
                            std::uint64_t seed);

/// Uniform perfect matching of G[U] by counting-to-sampling: repeatedly take
/// the lowest unmatched vertex v of U and choose its partner w with
/// probability PM(G[U - v - w]) / PM(G[U]). Throws Error if none exists.
Matching sample_pm_of_induced(const Graph& g, const VertexSet& u, PmCache& cache, Rng& rng);
Matching sample_pm_of_induced(const Graph& g, const VertexSet& u, const CountOracle& oracle, std::uint64_t seed);

/// sample_vertex_set on stream Rng(seed).split(0), then sample_pm_of_induced
/// on Rng(seed).split(1).
Matching sample_matching_vertex(const Graph& g, double lambda, double delta_tv, PmCache& cache, std::uint64_t seed);
Matching sample_matching_vertex(const Graph& g, double lambda, double delta_tv, const CountOracle& oracle,
                                std::uint64_t seed);

/// Explicit transition matrix of the ideal chain on positive-weight sets.
struct VertexTransitionMatrix {
  std::vector<VertexSet> states;
  std::vector<Real> weights;               // w(U), unnormalized
  std::vector<std::vector<Real>> p;        // row-stochastic
};

VertexTransitionMatrix vertex_transition_matrix(const Graph& g, Real lambda, const CountOracle& oracle);

/// True if every state reaches every other along positive transitions.
bool strongly_connected(const VertexTransitionMatrix& t);

struct SpectrumSummary {
  Real second_largest = 0;  // lambda_2 of P
  Real smallest = 0;
  Real gap = 0;             // 1 - lambda_2
};

/// Eigenvalues of the reversible chain via the symmetrized D^1/2 P D^-1/2.
SpectrumSummary transition_spectrum(const VertexTransitionMatrix& t);

}  // namespace matchlab
