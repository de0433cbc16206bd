#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "matchlab/catalog.hpp"
#include "matchlab/polynomial.hpp"

using namespace matchlab;
using namespace matchlab::testing;

namespace {
std::vector<BigInt> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }
}  // namespace

TEST(MatchingPolynomial, SmallGraphs) {
  EXPECT_EQ(matching_polynomial(k2()).coeffs, ints({1, 1}));
  EXPECT_EQ(matching_polynomial(p3()).coeffs, ints({1, 2}));
  EXPECT_EQ(matching_polynomial(p4()).coeffs, ints({1, 3, 1}));
  EXPECT_EQ(matching_polynomial(c4()).coeffs, ints({1, 4, 2}));
  EXPECT_EQ(matching_polynomial(c6()).coeffs, ints({1, 6, 9, 2}));
  EXPECT_EQ(matching_polynomial(gen_complete(4)).coeffs, ints({1, 6, 3}));
  EXPECT_EQ(matching_polynomial(gen_hexagon_chain(1)).coeffs.back(), 1);
}

TEST(MatchingPolynomial, EmptyGraph) {
  const auto p = matching_polynomial(Graph(3, {}));
  EXPECT_EQ(p.coeffs, ints({1}));
  EXPECT_EQ(p.degree(), 0);
  EXPECT_THROW(polynomial_roots(p), Error);
}

TEST(MatchingPolynomial, TextRoundTrip) {
  const auto p = matching_polynomial(c6());
  EXPECT_EQ(p.to_string(), "1 6 9 2");
  EXPECT_EQ(MatchingPolynomial::parse("1 6 9 2").coeffs, p.coeffs);
}

TEST(MatchingPolynomial, CapOnStatesThrows) {
  PolynomialOptions tight;
  tight.max_states = 10;
  EXPECT_THROW(matching_polynomial(gen_grid(5, 5), tight), CapExceeded);
}

TEST(MatchingPolynomial, AgreesWithEnumerationOnCatalog) {
  for (const Graph& g : connected_graph_catalog(7)) {
    std::vector<BigInt> by_size(1, 0);
    for (const auto& m : enumerate_matchings(g)) {
      if (by_size.size() <= m.size()) by_size.resize(m.size() + 1, 0);
      by_size[m.size()] += 1;
    }
    EXPECT_EQ(matching_polynomial(g).coeffs, by_size);
  }
}

TEST(ExpectedSize, SingleEdge) {
  for (Real lambda : {0.1L, 1.0L, 10.0L}) EXPECT_NEAR(expected_size(k2(), lambda), lambda / (1 + lambda), 1e-15);
}

TEST(ExpectedSize, PathOnFourVertices) {
  EXPECT_NEAR(expected_size(p4(), 1), 1.0L, 1e-15);
  EXPECT_NEAR(expected_size(p4(), 2), 14.0L / 11, 1e-15);
}

TEST(ExpectedSize, FourCycleAtOne) {
  // (4 * 1 + 2 * 2) / 7
  EXPECT_NEAR(expected_size(c4(), 1), 8.0L / 7.0L, 1e-15);
}

TEST(PolynomialRoots, SmallExamples) {
  const auto k = polynomial_roots(matching_polynomial(k2()));
  ASSERT_EQ(k.roots.size(), 1u);
  EXPECT_NEAR(k.roots[0], -1, 1e-15);
  EXPECT_NEAR(expected_size_via_roots(k, 1), 0.5, 1e-15);

  const auto p = polynomial_roots(matching_polynomial(p4()));
  ASSERT_EQ(p.roots.size(), 2u);
  EXPECT_NEAR(p.roots[0], -(3 + std::sqrt(5.0L)) / 2, 1e-15);
  EXPECT_NEAR(p.roots[1], -(3 - std::sqrt(5.0L)) / 2, 1e-15);
  EXPECT_NEAR(expected_size_via_roots(p, 2), 14.0L / 11, 1e-12);

  const auto t = polynomial_roots(matching_polynomial(k3()));
  ASSERT_EQ(t.roots.size(), 1u);
  EXPECT_NEAR(t.roots[0], -1.0L / 3, 1e-15);
  EXPECT_NEAR(expected_size_via_roots(t, 1), 0.75, 1e-15);
}

TEST(PolynomialRoots, FourCycle) {
  const auto r = polynomial_roots(matching_polynomial(c4()));
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_NEAR(r.roots[0], -1 - std::sqrt(2.0L) / 2, 1e-15);
  EXPECT_NEAR(r.roots[1], -1 + std::sqrt(2.0L) / 2, 1e-15);
  EXPECT_LT(r.residual, 1e-12);
}

TEST(PolynomialRoots, RepeatedRootsKeepMultiplicity) {
  const auto r = polynomial_roots(MatchingPolynomial::parse("1 2 1"));
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_NEAR(r.roots[0], -1, 1e-15);
  EXPECT_NEAR(r.roots[1], -1, 1e-15);
}

TEST(PolynomialRoots, ComplexRootsAreRejected) { EXPECT_THROW(polynomial_roots(MatchingPolynomial::parse("1 0 1")), Error); }

TEST(PolynomialRoots, CatalogRootsAreRealNegativeAndReproduceExpectedSize) {
  for (const Graph& g : connected_graph_catalog(8)) {
    const auto p = matching_polynomial(g);
    const auto r = polynomial_roots(p);
    ASSERT_EQ(static_cast<int>(r.roots.size()), p.degree());
    EXPECT_LT(r.residual, 1e-8);
    for (Real x : r.roots) EXPECT_LT(x, 0);
    for (Real lambda : {0.1L, 1.0L, 10.0L}) {
      const Real direct = expected_size(p, lambda);
      EXPECT_LE(std::abs(direct - expected_size_via_roots(r, lambda)), 1e-6L * std::max<Real>(1, direct));
    }
  }
}

TEST(RootSpectrum, PathPassesBothBounds) {
  const auto rep = root_spectrum_check(matching_polynomial(gen_path(6)), 2, 1.0 / 3);
  EXPECT_TRUE(rep.all_negative);
  EXPECT_TRUE(rep.upper_pass);
  EXPECT_TRUE(rep.lower_pass);
  EXPECT_NEAR(static_cast<double>(rep.upper_threshold), 512.0, 1e-9);
  EXPECT_NEAR(static_cast<double>(rep.lower_threshold), 0.25, 1e-12);
}

TEST(RootSpectrum, TriangleAndPathExamples) {
  const auto tri = root_spectrum_check(matching_polynomial(k3()), 2, 0.5);
  EXPECT_NEAR(static_cast<double>(tri.min_abs_root), 1.0 / 3, 1e-12);
  EXPECT_TRUE(tri.pass());
  const auto path = root_spectrum_check(matching_polynomial(p4()), 2, 0.5);
  EXPECT_NEAR(static_cast<double>(path.upper_threshold), 64.0, 1e-9);
  EXPECT_EQ(path.fraction_below_upper, 1);
  EXPECT_TRUE(path.pass());
}

TEST(RootSpectrum, LowerBoundSkippedForDegreeOne) {
  const auto rep = root_spectrum_check(matching_polynomial(k2()), 1, 0.5);
  EXPECT_TRUE(rep.lower_skipped);
  EXPECT_TRUE(rep.pass());
}

TEST(RootSpectrum, CatalogHoldsForBoundedDegree) {
  for (const Graph& g : connected_graph_catalog(8)) {
    for (double eps : {1.0 / 3, 0.5}) {
      const auto rep = root_spectrum_check(matching_polynomial(g), g.max_degree(), eps);
      EXPECT_TRUE(rep.pass()) << rep.note;
    }
  }
}
