#pragma once

#include <vector>

#include "matchlab/graph.hpp"
#include "matchlab/matching.hpp"

namespace matchlab {

enum class CountMethod { kAuto, kFkt, kRyser, kEnumerate };

const char* to_string(CountMethod m);
CountMethod parse_count_method(const std::string& name);

/// Perfect matchings by backtracking on the lowest uncovered vertex.
/// 1 for the empty graph. Throws CapExceeded after `cap` perfect matchings.
BigInt count_pm_enumerate(const Graph& g, std::uint64_t cap = kDefaultEnumerationCap);

/// Orientation of an embedded planar graph with its face-parity certificate.
/// Darts are numbered 2p (u -> v) and 2p + 1 (v -> u) for the edge at
/// position p of g.edges().
struct KasteleynOrientation {
  std::vector<char> forward;           // per position: oriented u -> v
  std::vector<std::vector<int>> faces;  // dart cycles traced from the rotation system
  std::vector<int> along;               // darts of each face agreeing with the orientation
  std::vector<int> root_faces;          // one exempt face per connected component
};

/// Traces faces, checks Euler's formula per component, orients a spanning
/// forest, then fixes co-tree edges leaves-first along the dual tree so every
/// non-root face has an odd `along` count. Throws Error if the embedding is
/// missing or not planar.
KasteleynOrientation kasteleyn_orientation(const Graph& g);

/// Signed skew-symmetric matrix: +1 at (u, v) for an edge oriented u -> v.
std::vector<std::vector<int>> kasteleyn_matrix(const Graph& g, const KasteleynOrientation& o);

/// Pfaffian by exact rational skew elimination (n even; 0 for odd n).
BigInt pfaffian(const std::vector<std::vector<int>>& a);
/// Determinant by fraction-free Bareiss elimination over the integers.
BigInt determinant_bareiss(const std::vector<std::vector<int>>& a);

/// |Pf| of the Kasteleyn matrix. 0 for odd n or an isolated vertex.
BigInt count_pm_fkt(const Graph& g);

inline constexpr int kRyserSideCap = 30;

/// Permanent of the biadjacency matrix by Ryser's formula with Gray-code
/// updates. Uses the stored bipartition, or detects one; throws
/// std::invalid_argument for non-bipartite graphs and CapExceeded above
/// kRyserSideCap vertices per side. 0 when the sides differ in size.
BigInt count_pm_ryser(const Graph& g);

/// Exact perfect-matching counter usable on every induced subgraph of the
/// graph it was made for (embeddings and bipartitions restrict).
class CountOracle {
 public:
  explicit CountOracle(CountMethod method = CountMethod::kEnumerate) : method_(method) {}
  CountMethod method() const { return method_; }
  /// Multiplicative error of the returned counts.
  double error_bound() const { return 0; }
  static bool applicable(CountMethod method, const Graph& g);
  BigInt count(const Graph& g) const;

 private:
  CountMethod method_;
};

/// kAuto prefers fkt (embedding present), then ryser (bipartite), then
/// enumeration. Throws std::invalid_argument for an inapplicable preference.
CountOracle make_oracle(const Graph& g, CountMethod preference = CountMethod::kAuto);

}  // namespace matchlab
