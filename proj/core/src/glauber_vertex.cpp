#include "matchlab/glauber_vertex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include <Eigen/Eigenvalues>

#include "matchlab/gibbs.hpp"

namespace matchlab {

VertexSchedule vertex_schedule(int n, int m, double lambda, double delta_tv) {
  if (n < 0 || m < 0 || !(lambda > 0) || !(delta_tv > 0 && delta_tv < 1)) {
    throw std::invalid_argument("vertex_schedule parameters out of range");
  }
  VertexSchedule s;
  s.delta_tv = delta_tv;
  const long double nn = n;
  const long double value =
      nn * nn / 2 * (m * std::log1p(static_cast<long double>(lambda)) + std::log(3.0L / delta_tv));
  s.t = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(value)));
  s.delta_prime = std::log1p(static_cast<long double>(delta_tv) / 3) / s.t;
  return s;
}

std::vector<std::uint64_t> to_bits(int n, const VertexSet& u) {
  std::vector<std::uint64_t> bits((n + 63) / 64, 0);
  for (VertexId v : u.vertices) {
    if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
    bits[v / 64] |= 1ULL << (v % 64);
  }
  return bits;
}

VertexSet from_bits(int n, const std::vector<std::uint64_t>& bits) {
  VertexSet s;
  for (VertexId v = 0; v < n; ++v) {
    if ((bits[v / 64] >> (v % 64)) & 1ULL) s.vertices.push_back(v);
  }
  return s;
}

std::size_t PmCache::Hash::operator()(const std::vector<std::uint64_t>& k) const {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (auto w : k) h = mix64(h ^ w);
  return static_cast<std::size_t>(h);
}

PmCache::PmCache(const Graph& g, CountOracle oracle, std::size_t capacity)
    : g_(&g), oracle_(oracle), capacity_(std::max<std::size_t>(1, capacity)) {}

const BigInt& PmCache::count(const std::vector<std::uint64_t>& members) {
  if (auto it = index_.find(members); it != index_.end()) {
    ++hits_;
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->second;
  }
  ++misses_;
  const VertexSet u = from_bits(g_->num_vertices(), members);
  BigInt value = u.size() % 2 ? BigInt(0) : oracle_.count(induced_subgraph(*g_, u.vertices));
  lru_.emplace_front(members, std::move(value));
  index_[members] = lru_.begin();
  if (lru_.size() > capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
  return lru_.front().second;
}

BigInt PmCache::count(const VertexSet& u) { return count(to_bits(g_->num_vertices(), u)); }

Real vertex_weight(const Graph& g, const VertexSet& u, Real lambda, const CountOracle& oracle) {
  if (u.size() % 2) return 0;
  if (u.size() == 0) return 1;
  const BigInt pm = oracle.count(induced_subgraph(g, u.vertices));
  return std::pow(lambda, static_cast<Real>(u.size() / 2)) * pm.convert_to<Real>();
}

VertexChain::VertexChain(const Graph& g, double lambda, PmCache& cache, Rng rng)
    : g_(&g), n_(g.num_vertices()), lambda_(lambda), cache_(&cache), rng_(rng), bits_((n_ + 63) / 64, 0) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
}

void VertexChain::step() {
  ++steps_;
  if (n_ < 2) return;
  const std::uint64_t pairs = static_cast<std::uint64_t>(n_) * (n_ - 1) / 2;
  std::uint64_t k = rng_.below(pairs);
  const double u = rng_.uniform();
  int a = 0;
  while (k >= static_cast<std::uint64_t>(n_ - 1 - a)) {
    k -= n_ - 1 - a;
    ++a;
  }
  const int b = a + 1 + static_cast<int>(k);

  std::vector<std::uint64_t> next = bits_;
  next[a / 64] ^= 1ULL << (a % 64);
  next[b / 64] ^= 1ULL << (b % 64);
  const int in_a = (bits_[a / 64] >> (a % 64)) & 1ULL;
  const int in_b = (bits_[b / 64] >> (b % 64)) & 1ULL;
  const int next_size = size_ + (in_a ? -1 : 1) + (in_b ? -1 : 1);
  if (next_size % 2) return;  // odd sets carry no weight

  const BigInt& pm = cache_->count(next);
  if (pm == 0) return;
  // r = w(U') / w(U); accept with r / (1 + r).
  const Real r = std::pow(static_cast<Real>(lambda_), static_cast<Real>(next_size - size_) / 2) *
                 (pm.convert_to<Real>() / count_.convert_to<Real>());
  if (u < r / (1 + r)) {
    bits_ = std::move(next);
    size_ = next_size;
    count_ = pm;
  }
}

VertexSet sample_vertex_set(const Graph& g, double lambda, double delta_tv, PmCache& cache, std::uint64_t seed) {
  VertexChain chain(g, lambda, cache, Rng(seed).split(0));
  chain.run(vertex_schedule(g.num_vertices(), g.num_edges(), lambda, delta_tv).t);
  return chain.current();
}

VertexSet sample_vertex_set(const Graph& g, double lambda, double delta_tv, const CountOracle& oracle,
                            std::uint64_t seed) {
  PmCache cache(g, oracle);
  return sample_vertex_set(g, lambda, delta_tv, cache, seed);
}

namespace {

BigInt uniform_below(Rng& rng, const BigInt& bound) {
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    BigInt x = 0;
    for (unsigned got = 0; got < bits; got += 64) {
      x <<= 64;
      x += rng();
    }
    x &= (BigInt(1) << bits) - 1;
    if (x < bound) return x;
  }
}

}  // namespace

Matching sample_pm_of_induced(const Graph& g, const VertexSet& u, PmCache& cache, Rng& rng) {
  const int n = g.num_vertices();
  std::vector<std::uint64_t> active = to_bits(n, u);
  auto is_active = [&](VertexId v) { return (active[v / 64] >> (v % 64)) & 1ULL; };
  auto flip = [&](VertexId v) { active[v / 64] ^= 1ULL << (v % 64); };
  Matching m;
  BigInt total = cache.count(active);
  if (total == 0) throw Error("induced subgraph has no perfect matching");
  for (VertexId v : u.vertices) {
    if (!is_active(v)) continue;
    std::vector<std::pair<EdgeId, BigInt>> options;
    flip(v);
    for (EdgeId id : g.incident(v)) {
      VertexId w = g.edge(id).other(v);
      if (!is_active(w)) continue;
      flip(w);
      BigInt c = cache.count(active);
      flip(w);
      if (c > 0) options.emplace_back(id, c);
    }
    BigInt sum = 0;
    for (const auto& [id, c] : options) sum += c;
    if (sum == 0) throw Error("counting oracle is inconsistent: no extendable partner");
    BigInt x = uniform_below(rng, sum);
    std::size_t pick = 0;
    while (x >= options[pick].second) {
      x -= options[pick].second;
      ++pick;
    }
    const EdgeId e = options[pick].first;
    flip(g.edge(e).other(v));
    m.edges.push_back(e);
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

Matching sample_pm_of_induced(const Graph& g, const VertexSet& u, const CountOracle& oracle, std::uint64_t seed) {
  PmCache cache(g, oracle);
  Rng rng(seed);
  return sample_pm_of_induced(g, u, cache, rng);
}

Matching sample_matching_vertex(const Graph& g, double lambda, double delta_tv, PmCache& cache, std::uint64_t seed) {
  VertexSet u = sample_vertex_set(g, lambda, delta_tv, cache, seed);
  Rng rng = Rng(seed).split(1);
  return sample_pm_of_induced(g, u, cache, rng);
}

Matching sample_matching_vertex(const Graph& g, double lambda, double delta_tv, const CountOracle& oracle,
                                std::uint64_t seed) {
  PmCache cache(g, oracle);
  return sample_matching_vertex(g, lambda, delta_tv, cache, seed);
}

VertexTransitionMatrix vertex_transition_matrix(const Graph& g, Real lambda, const CountOracle& oracle) {
  const int n = g.num_vertices();
  VertexTransitionMatrix t;
  // Positive-weight states are exactly the sets V(M).
  std::map<VertexSet, int> index;
  for_each_matching(g, nullptr, kDefaultEnumerationCap, [&](const std::vector<EdgeId>& m) {
    index.emplace(covered_vertices(g, Matching{m}), 0);
  });
  for (auto& [s, i] : index) {
    i = static_cast<int>(t.states.size());
    t.states.push_back(s);
    t.weights.push_back(vertex_weight(g, s, lambda, oracle));
  }
  const std::size_t k = t.states.size();
  t.p.assign(k, std::vector<Real>(k, 0));
  const Real pairs = static_cast<Real>(n) * (n - 1) / 2;
  for (std::size_t i = 0; i < k; ++i) {
    Real leave = 0;
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        VertexSet next = t.states[i];
        for (VertexId v : {a, b}) {
          auto it = std::lower_bound(next.vertices.begin(), next.vertices.end(), v);
          if (it != next.vertices.end() && *it == v) {
            next.vertices.erase(it);
          } else {
            next.vertices.insert(it, v);
          }
        }
        auto it = index.find(next);
        if (it == index.end()) continue;
        const Real wi = t.weights[i], wj = t.weights[it->second];
        const Real step = wj / (wi + wj) / pairs;
        t.p[i][it->second] += step;
        leave += step;
      }
    }
    t.p[i][i] += 1 - leave;
  }
  return t;
}

bool strongly_connected(const VertexTransitionMatrix& t) {
  const std::size_t k = t.states.size();
  if (k == 0) return true;
  auto reach_all = [&](bool reverse) {
    std::vector<char> seen(k, 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      for (std::size_t j = 0; j < k; ++j) {
        const Real w = reverse ? t.p[j][i] : t.p[i][j];
        if (w > 0 && !seen[j]) {
          seen[j] = 1;
          ++count;
          q.push(j);
        }
      }
    }
    return count == k;
  };
  return reach_all(false) && reach_all(true);
}

SpectrumSummary transition_spectrum(const VertexTransitionMatrix& t) {
  const int k = static_cast<int>(t.states.size());
  SpectrumSummary out;
  if (k <= 1) {
    out.gap = 1;
    return out;
  }
  Real z = 0;
  for (Real w : t.weights) z += w;
  Eigen::MatrixXd s(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      s(i, j) = static_cast<double>(std::sqrt(t.weights[i] / z) * t.p[i][j] / std::sqrt(t.weights[j] / z));
    }
  }
  // Reversibility makes s symmetric up to rounding.
  Eigen::MatrixXd sym = (s + s.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  out.smallest = ev(0);
  out.second_largest = ev(k - 2);
  out.gap = 1 - out.second_largest;
  return out;
}

}  // namespace matchlab
