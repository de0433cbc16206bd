#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matchlab/graph.hpp"

namespace matchlab {

/// m_G(x) = sum_k m_k x^k where m_k counts matchings of size k.
struct MatchingPolynomial {
  std::vector<BigInt> coeffs;  // coeffs[k] = m_k, k = 0..nu

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// m_G(x) by Horner in extended precision.
  Real evaluate(Real x) const;
  /// "1 3 1" style rendering.
  std::string to_string() const;
  static MatchingPolynomial parse(const std::string& text);
};

struct PolynomialOptions {
  int max_degree = 64;
  std::size_t max_states = 4'000'000;
};

/// Deletion-contraction m_G = m_{G-e} + x * m_{G-u-v}, memoized on the set of
/// surviving edges. Throws CapExceeded past either limit in `options`.
MatchingPolynomial matching_polynomial(const Graph& g, const PolynomialOptions& options = {});

/// E|M| under the Gibbs distribution: lambda m'(lambda) / m(lambda).
Real expected_size(const MatchingPolynomial& p, Real lambda);
Real expected_size(const Graph& g, Real lambda);

struct RootSet {
  std::vector<Real> roots;  // ascending, repeated by multiplicity
  Real residual = 0;        // max relative |p(root)| / sum_k |c_k| |root|^k
};

/// Real roots with multiplicity by square-free decomposition and exact Sturm
/// bisection over dyadic rationals. Throws Error if the polynomial does not
/// have deg(p) real roots (counted with multiplicity) or has degree < 1.
RootSet polynomial_roots(const MatchingPolynomial& p);

/// sum_i lambda / (lambda - r_i).
Real expected_size_via_roots(const RootSet& roots, Real lambda);

struct RootSpectrumReport {
  double epsilon = 0;
  int delta_max = 0;
  Real upper_threshold = 0;        // (4 Delta)^(1/epsilon)
  Real fraction_below_upper = 0;   // share of roots with |r| <= threshold
  Real min_abs_root = 0;
  Real lower_threshold = 0;        // 1 / (4 (Delta - 1)); 0 when skipped
  bool all_negative = false;
  bool upper_pass = false;
  bool lower_pass = false;
  bool lower_skipped = false;
  bool pass() const { return all_negative && upper_pass && lower_pass; }
  std::string note;
};

RootSpectrumReport root_spectrum_check(const RootSet& roots, int delta_max, double epsilon);
RootSpectrumReport root_spectrum_check(const MatchingPolynomial& p, int delta_max, double epsilon);

}  // namespace matchlab
