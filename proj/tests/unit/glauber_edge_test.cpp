#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "matchlab/catalog.hpp"
#include "matchlab/glauber_edge.hpp"

using namespace matchlab;
using namespace matchlab::testing;

namespace {
constexpr long double kTwo64 = 18446744073709551616.0L;

std::map<Matching, std::uint64_t> generic_histogram(const Graph& g, double lambda, std::uint64_t steps,
                                                    std::uint64_t samples, std::uint64_t seed) {
  std::map<Matching, std::uint64_t> hist;
  for (std::uint64_t k = 0; k < samples; ++k) {
    EdgeChain chain(g, lambda, Rng(seed).split(k));
    chain.run(steps);
    ++hist[chain.current()];
  }
  return hist;
}
}  // namespace

TEST(EdgeStep, SingleEdgeFromEmpty) {
  const Graph g = k2();
  EdgeChain chain(g, 1, Rng(1));
  EXPECT_EQ(chain.insertion_threshold(), 1ULL << 63);
  chain.apply(0, (1ULL << 63));
  EXPECT_EQ(chain.current(), matching({}));
  chain.apply(0, (1ULL << 63) - 1);
  EXPECT_EQ(chain.current(), matching({0}));
  EXPECT_TRUE(chain.matched(0));
  EXPECT_EQ(chain.steps_taken(), 2u);
}

TEST(EdgeStep, BlockedInsertionNeverMoves) {
  const Graph g = p3();
  EdgeChain chain(g, 1, Rng(1));
  chain.apply(0, 0);
  ASSERT_EQ(chain.current(), matching({0}));
  chain.apply(1, 0);
  EXPECT_EQ(chain.current(), matching({0}));
}

TEST(EdgeStep, RemovalAtTinyActivityIsAlmostCertain) {
  const Graph g = k2();
  EdgeChain chain(g, 1e-6, Rng(1));
  Rng rng(99);
  int removed = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) removed += rng() < chain.removal_threshold();
  EXPECT_NEAR(static_cast<double>(removed) / trials, 1.0, 1e-3);
}

TEST(EdgeStep, ChainStaysAMatching) {
  const Graph g = gen_grid(4, 4);
  EdgeChain chain(g, 3, Rng(5));
  for (int i = 0; i < 2000; ++i) {
    chain.step();
    ASSERT_TRUE(is_matching(g, chain.current()));
  }
}

TEST(Schedule, JerrumExample) {
  EXPECT_EQ(schedule_steps(ScheduleKind::kJerrum, 4, 3, 2, 1, 0.1), 95u);
  // With delta = 1 only ceil(12 * 4 ln 4) remains.
  EXPECT_EQ(schedule_steps(ScheduleKind::kJerrum, 4, 3, 2, 1, 1.0), 67u);
}

TEST(Schedule, DoublingConstantDoublesUpToRounding) {
  for (int n : {4, 8, 16}) {
    const auto t1 = schedule_steps(ScheduleKind::kJerrum, n, n, 3, 1.5, 0.01, 1);
    const auto t2 = schedule_steps(ScheduleKind::kJerrum, n, n, 3, 1.5, 0.01, 2);
    EXPECT_LE(t2, 2 * t1);
    EXPECT_GE(t2 + 1, 2 * t1);
  }
}

TEST(Schedule, ChenSaturates) {
  const auto s = make_schedule(ScheduleKind::kChen, 100, 300, 3, 50, 0.01);
  EXPECT_TRUE(s.saturated);
  EXPECT_EQ(s.steps, UINT64_MAX);
  EXPECT_FALSE(make_schedule(ScheduleKind::kChen, 4, 3, 2, 0.5, 0.1).saturated);
}

TEST(Presets, FormulaValues) {
  EXPECT_DOUBLE_EQ(preset_lambda(1, 1, PresetForm::kApproximation), 32);
  EXPECT_DOUBLE_EQ(preset_lambda(1, 1, PresetForm::kSampling), 16);
  // Halving epsilon doubles the exponent of 4 Delta.
  for (int d : {1, 2, 3}) {
    const double a = preset_lambda(0.5, d, PresetForm::kApproximation) * 0.5 / 2;
    const double b = preset_lambda(1, d, PresetForm::kApproximation) / 2;
    EXPECT_NEAR(std::log(a), 2 * std::log(b), 1e-9);
  }
}

TEST(EdgeChainProperties, DetailedBalance) {
  for (const Graph& g : connected_graph_catalog(6)) {
    for (double lambda : {0.5, 1.0, 4.0}) {
      const auto d = exact_gibbs(g, lambda);
      EdgeChain chain(g, lambda, Rng(1));
      const long double ins = chain.insertion_threshold() / kTwo64, rem = chain.removal_threshold() / kTwo64;
      for (std::size_t i = 0; i < d.size(); ++i) {
        for (const Edge& e : g.edges()) {
          if (d.support[i].contains(e.id)) continue;
          Matching y = d.support[i];
          y.edges.push_back(e.id);
          std::sort(y.edges.begin(), y.edges.end());
          if (!is_matching(g, y)) continue;
          const Real forward = d.probs[i] * ins / g.num_edges();
          const Real backward = d.probability(y) * rem / g.num_edges();
          EXPECT_NEAR(forward, backward, 1e-12);
        }
      }
    }
  }
}

TEST(EdgeChainProperties, HistogramMatchesGenericChain) {
  // Cover the 8-lane, 4-lane and scalar tails; 3x3 grid has 12 edges.
  for (const Graph& g : {p4(), c6(), gen_grid(3, 3), gen_grid(5, 4)}) {
    for (std::uint64_t samples : {1u, 5u, 13u, 37u}) {
      EXPECT_EQ(sample_histogram(g, 1.7, 150, samples, 42), generic_histogram(g, 1.7, 150, samples, 42))
          << g.num_edges() << " edges, " << samples << " samples";
    }
  }
}

TEST(EdgeChainProperties, Reproducible) {
  const Graph g = gen_grid(3, 3);
  const auto s = make_schedule(ScheduleKind::kJerrum, g.num_vertices(), g.num_edges(), 4, 1, 0.1);
  EXPECT_EQ(sample_matching(g, 1, s, 7), sample_matching(g, 1, s, 7));
  EXPECT_EQ(sample_histogram(g, 1, 100, 50, 3), sample_histogram(g, 1, 100, 50, 3));
}

TEST(EdgeChainEmpirical, SingleEdgeEmptyProbability) {
  const auto hist = sample_histogram(k2(), 1, 1000, 100000, 2024);
  EXPECT_NEAR(hist.at(matching({})) / 1e5, 0.5, 0.01);
}

TEST(EdgeChainEmpirical, PathAtLambdaFour) {
  const Graph g = p3();
  const auto steps = schedule_steps(ScheduleKind::kJerrum, 3, 2, 2, 4, 0.01);
  const auto hist = sample_histogram(g, 4, steps, 100000, 11);
  const auto d = exact_gibbs(g, 4);
  EXPECT_LT(empirical_tv(d.support, d.probs, hist), 0.02);
}
