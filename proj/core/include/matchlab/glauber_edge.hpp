#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "matchlab/graph.hpp"
#include "matchlab/rng.hpp"

namespace matchlab {

enum class ScheduleKind { kJerrum, kChen };

struct Schedule {
  ScheduleKind kind = ScheduleKind::kJerrum;
  double constant = 1;
  std::uint64_t steps = 1;
  bool saturated = false;  // formula exceeded 2^63 and was clamped
};

/// T = ceil(C * formula), at least 1. Natural logarithms throughout.
///   jerrum: n m max(1,L) (n (ln n + ln max(1,L)) + ln(1/delta))
///   chen:   exp(L^3 D^3 ln(L^2 D^3)) m (ln n + ln(1/delta))
/// Values past 2^63 saturate to UINT64_MAX and set Schedule::saturated.
Schedule make_schedule(ScheduleKind kind, int n, int m, int delta_max, double lambda, double delta_tv,
                       double constant = 1);
std::uint64_t schedule_steps(ScheduleKind kind, int n, int m, int delta_max, double lambda, double delta_tv,
                             double constant = 1);

enum class PresetForm { kApproximation, kSampling };

/// kApproximation: 2/eps (4 Delta)^(2/eps);  kSampling: 2 (eps/2)^-1 (4 Delta)^(1/eps).
double preset_lambda(double epsilon, int delta_max, PresetForm form);

/// Single-site Glauber dynamics on matchings. Each step draws one 64-bit
/// word: its multiply-high by m picks the edge and the low half of the
/// product is the acceptance uniform.
class EdgeChain {
 public:
  EdgeChain(const Graph& g, double lambda, Rng rng);
  EdgeChain(Graph&&, double, Rng) = delete;  // keeps a pointer to the graph

  void step() { propose((*this).draw()); }
  void run(std::uint64_t steps) {
    for (std::uint64_t s = 0; s < steps; ++s) step();
  }

  /// Applies one transition for a given proposal. `position` indexes
  /// g.edges(); `u` is a uniform 64-bit acceptance variate.
  void apply(int position, std::uint64_t u);

  Matching current() const;
  bool matched(VertexId v) const { return matched_[v] != 0; }
  bool contains_position(int position) const { return in_[position] != 0; }
  std::uint64_t steps_taken() const { return steps_; }
  const Graph& graph() const { return *g_; }

  /// Thresholds against which u is compared.
  std::uint64_t removal_threshold() const { return remove_below_; }
  std::uint64_t insertion_threshold() const { return insert_below_; }

 private:
  struct Proposal {
    int position;
    std::uint64_t u;
  };
  Proposal draw();
  void propose(Proposal p) { apply(p.position, p.u); }

  const Graph* g_;
  Rng rng_;
  std::vector<char> in_;
  std::vector<char> matched_;
  std::uint64_t remove_below_;
  std::uint64_t insert_below_;
  std::uint64_t steps_ = 0;
};

/// Acceptance thresholds: P(u < threshold) = probability for u uniform on 2^64.
std::uint64_t probability_threshold(long double p);

/// State after schedule.steps transitions from the empty matching, driven by Rng(seed).
Matching sample_matching(const Graph& g, double lambda, const Schedule& schedule, std::uint64_t seed);

/// Histogram of `samples` independent chains; chain k uses Rng(seed).split(k)
/// and is bit-for-bit the chain sample_matching would run with that stream.
std::map<Matching, std::uint64_t> sample_histogram(const Graph& g, double lambda, std::uint64_t steps,
                                                   std::uint64_t samples, std::uint64_t seed);

}  // namespace matchlab
