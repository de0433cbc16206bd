#pragma once

#include <map>
#include <vector>

#include "matchlab/gibbs.hpp"
#include "matchlab/graph.hpp"
#include "matchlab/instances.hpp"

namespace matchlab::testing {

inline Graph k2() { return Graph(2, {{0, 1}}); }
inline Graph p3() { return gen_path(3); }
inline Graph p4() { return gen_path(4); }
inline Graph c4() { return gen_cycle(4); }
inline Graph c6() { return gen_cycle(6); }
inline Graph k3() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline Graph star3() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}}); }
inline Graph two_edges() { return Graph(4, {{0, 1}, {2, 3}}); }

inline Matching matching(std::vector<EdgeId> ids) { return Matching{std::move(ids)}; }
inline VertexSet vset(std::vector<VertexId> vs) { return VertexSet{std::move(vs)}; }

template <class Key>
Real empirical_tv(const std::vector<Key>& support, const std::vector<Real>& probs,
                  const std::map<Key, std::uint64_t>& hist) {
  std::vector<Key> keys;
  std::vector<std::uint64_t> counts;
  for (const auto& [k, c] : hist) {
    keys.push_back(k);
    counts.push_back(c);
  }
  return total_variation<Key>(support, probs, keys, counts);
}

}  // namespace matchlab::testing
