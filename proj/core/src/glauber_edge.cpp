#include "matchlab/glauber_edge.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#if defined(__x86_64__) && defined(__GNUC__)
#include <immintrin.h>
#endif

namespace matchlab {

namespace {

constexpr long double kSaturateLog = 43.66827237527655449L;  // ln 2^63

Schedule finish(ScheduleKind kind, double constant, long double log_value) {
  Schedule s;
  s.kind = kind;
  s.constant = constant;
  if (log_value > kSaturateLog) {
    s.steps = std::numeric_limits<std::uint64_t>::max();
    s.saturated = true;
    return s;
  }
  long double t = std::ceil(std::exp(log_value) * (1 - 1e-15L));
  s.steps = t < 1 ? 1 : static_cast<std::uint64_t>(t);
  return s;
}

}  // namespace

Schedule make_schedule(ScheduleKind kind, int n, int m, int delta_max, double lambda, double delta_tv,
                       double constant) {
  if (n < 1 || m < 0 || delta_max < 0 || !(lambda > 0) || !(delta_tv > 0) || delta_tv > 1 || !(constant > 0)) {
    throw std::invalid_argument("schedule parameters out of range");
  }
  const long double ln_n = std::log(static_cast<long double>(n));
  const long double ln_inv_delta = -std::log(static_cast<long double>(delta_tv));
  if (m == 0) return finish(kind, constant, 0);

  if (kind == ScheduleKind::kJerrum) {
    const long double big = std::max<long double>(1, lambda);
    const long double value = static_cast<long double>(constant) * n * m * big *
                              (n * (ln_n + std::log(big)) + ln_inv_delta);
    if (value <= 0) return finish(kind, constant, 0);
    // Exact ceil when the value is representable; avoids exp/log round trips.
    if (value < 1e18L) {
      Schedule s;
      s.kind = kind;
      s.constant = constant;
      s.steps = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(value)));
      return s;
    }
    return finish(kind, constant, std::log(value));
  }

  const long double ld = lambda, dd = delta_max;
  const long double tail = ln_n + ln_inv_delta;
  if (tail <= 0 || delta_max == 0) return finish(kind, constant, 0);
  const long double exponent = ld * ld * ld * dd * dd * dd * std::log(ld * ld * dd * dd * dd);
  const long double log_value = std::log(static_cast<long double>(constant)) + exponent +
                                std::log(static_cast<long double>(m)) + std::log(tail);
  if (log_value < kSaturateLog) {
    Schedule s;
    s.kind = kind;
    s.constant = constant;
    s.steps = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::exp(log_value))));
    return s;
  }
  return finish(kind, constant, log_value);
}

std::uint64_t schedule_steps(ScheduleKind kind, int n, int m, int delta_max, double lambda, double delta_tv,
                             double constant) {
  return make_schedule(kind, n, m, delta_max, lambda, delta_tv, constant).steps;
}

double preset_lambda(double epsilon, int delta_max, PresetForm form) {
  if (!(epsilon > 0) || !(epsilon < 1 || epsilon == 1) || delta_max < 1) {
    throw std::invalid_argument("preset_lambda needs 0 < epsilon <= 1 and Delta >= 1");
  }
  const double base = 4.0 * delta_max;
  if (form == PresetForm::kApproximation) return 2.0 / epsilon * std::pow(base, 2.0 / epsilon);
  return 2.0 / (epsilon / 2.0) * std::pow(base, 1.0 / epsilon);
}

std::uint64_t probability_threshold(long double p) {
  if (!(p > 0)) return 0;
  if (p >= 1) return std::numeric_limits<std::uint64_t>::max();
  long double t = std::floor(std::ldexp(p, 64));
  if (t >= 18446744073709551615.0L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(t);
}

EdgeChain::EdgeChain(const Graph& g, double lambda, Rng rng)
    : g_(&g),
      rng_(rng),
      in_(g.num_edges(), 0),
      matched_(g.num_vertices(), 0),
      remove_below_(probability_threshold(1.0L / (1.0L + lambda))),
      insert_below_(probability_threshold(static_cast<long double>(lambda) / (1.0L + lambda))) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
}

EdgeChain::Proposal EdgeChain::draw() {
  const auto prod = static_cast<unsigned __int128>(rng_()) * static_cast<std::uint64_t>(g_->num_edges());
  return Proposal{static_cast<int>(prod >> 64), static_cast<std::uint64_t>(prod)};
}

void EdgeChain::apply(int position, std::uint64_t u) {
  ++steps_;
  if (g_->num_edges() == 0) return;
  const Edge& e = g_->edges()[position];
  if (in_[position]) {
    if (u < remove_below_) {
      in_[position] = 0;
      matched_[e.u] = matched_[e.v] = 0;
    }
  } else if (!matched_[e.u] && !matched_[e.v] && u < insert_below_) {
    in_[position] = 1;
    matched_[e.u] = matched_[e.v] = 1;
  }
}

Matching EdgeChain::current() const {
  Matching m;
  for (int i = 0; i < g_->num_edges(); ++i) {
    if (in_[i]) m.edges.push_back(g_->edges()[i].id);
  }
  return m;
}

namespace {

// Bitmask replica of EdgeChain for graphs with at most 64 vertices and edges.
// Consumes the generator identically, so results agree bit for bit.
struct CompactChain {
  std::vector<std::uint64_t> vertex_mask;
  std::uint64_t m;
  std::uint64_t remove_below, insert_below;

  CompactChain(const Graph& g, double lambda)
      : m(g.num_edges()),
        remove_below(probability_threshold(1.0L / (1.0L + lambda))),
        insert_below(probability_threshold(static_cast<long double>(lambda) / (1.0L + lambda))) {
    for (const Edge& e : g.edges()) vertex_mask.push_back((1ULL << e.u) | (1ULL << e.v));
  }

  std::uint64_t run(Rng rng, std::uint64_t steps) const {
    std::uint64_t in = 0, covered = 0;
    if (m == 0) return 0;
    const std::uint64_t* vm = vertex_mask.data();
    for (std::uint64_t s = 0; s < steps; ++s) {
      const auto prod = static_cast<unsigned __int128>(rng()) * m;
      const unsigned idx = static_cast<unsigned>(prod >> 64);
      const std::uint64_t u = static_cast<std::uint64_t>(prod);
      const std::uint64_t bit = 1ULL << idx;
      const std::uint64_t mask = vm[idx];
      const std::uint64_t present = (in >> idx) & 1;
      const std::uint64_t free = (covered & mask) == 0;
      const std::uint64_t flip = (present & (u < remove_below)) | (~present & free & (u < insert_below));
      const std::uint64_t sel = -flip;
      in ^= bit & sel;
      covered ^= mask & sel;
    }
    return in;
  }

  // Four independent chains advanced in lockstep; each one is identical to
  // run() on its own stream, the interleaving only hides step latency.
  void run4(const Rng* rngs, std::uint64_t steps, std::uint64_t* out) const {
    if (m == 0) {
      for (int c = 0; c < 4; ++c) out[c] = 0;
      return;
    }
    Rng r0 = rngs[0], r1 = rngs[1], r2 = rngs[2], r3 = rngs[3];
    std::uint64_t in0 = 0, in1 = 0, in2 = 0, in3 = 0;
    std::uint64_t cv0 = 0, cv1 = 0, cv2 = 0, cv3 = 0;
    const std::uint64_t* vm = vertex_mask.data();
    auto one = [&](Rng& r, std::uint64_t& in, std::uint64_t& covered) {
      const auto prod = static_cast<unsigned __int128>(r()) * m;
      const unsigned idx = static_cast<unsigned>(prod >> 64);
      const std::uint64_t u = static_cast<std::uint64_t>(prod);
      const std::uint64_t bit = 1ULL << idx;
      const std::uint64_t mask = vm[idx];
      const std::uint64_t present = (in >> idx) & 1;
      const std::uint64_t free = (covered & mask) == 0;
      const std::uint64_t flip = (present & (u < remove_below)) | (~present & free & (u < insert_below));
      const std::uint64_t sel = -flip;
      in ^= bit & sel;
      covered ^= mask & sel;
    };
    for (std::uint64_t s = 0; s < steps; ++s) {
      one(r0, in0, cv0);
      one(r1, in1, cv1);
      one(r2, in2, cv2);
      one(r3, in3, cv3);
    }
    out[0] = in0;
    out[1] = in1;
    out[2] = in2;
    out[3] = in3;
  }
};

bool compact_ok(const Graph& g) { return g.num_vertices() <= 64 && g.num_edges() <= 64; }

#if defined(__x86_64__) && defined(__GNUC__)
#define MATCHLAB_HAVE_AVX512_KERNEL 1

// Eight CompactChains in the lanes of a zmm register. Every operation is the
// exact 64-bit arithmetic of the scalar loop, so lane c ends in the state
// run(rngs[c], steps) would produce.
__attribute__((target("avx512f"))) void run8_avx512(const CompactChain& ch, const Rng* rngs, std::uint64_t steps,
                                                    std::uint64_t* out) {
  alignas(64) std::uint64_t init[8];
  for (int c = 0; c < 8; ++c) init[c] = rngs[c].state();
  __m512i state = _mm512_load_si512(init);
  const __m512i step = _mm512_set1_epi64(static_cast<long long>(Rng::kWyStep));
  const __m512i wxor = _mm512_set1_epi64(static_cast<long long>(Rng::kWyXor));
  const __m512i lo32 = _mm512_set1_epi64(0xffffffffLL);
  const __m512i one = _mm512_set1_epi64(1);
  const __m512i mvec = _mm512_set1_epi64(static_cast<long long>(ch.m));
  const __m512i rem = _mm512_set1_epi64(static_cast<long long>(ch.remove_below));
  const __m512i ins = _mm512_set1_epi64(static_cast<long long>(ch.insert_below));
  const long long* vm = reinterpret_cast<const long long*>(ch.vertex_mask.data());
  alignas(64) long long table[8] = {};
  const bool small = ch.m <= 8;
  for (std::uint64_t i = 0; i < ch.m && i < 8; ++i) table[i] = vm[i];
  const __m512i tab = _mm512_load_si512(table);
  __m512i in = _mm512_setzero_si512();
  __m512i cov = _mm512_setzero_si512();
  for (std::uint64_t s = 0; s < steps; ++s) {
    state = _mm512_add_epi64(state, step);
    const __m512i a = state;
    const __m512i b = _mm512_xor_si512(state, wxor);
    const __m512i ah = _mm512_srli_epi64(a, 32);
    const __m512i bh = _mm512_srli_epi64(b, 32);
    const __m512i ll = _mm512_mul_epu32(a, b);
    const __m512i lh = _mm512_mul_epu32(a, bh);
    const __m512i hl = _mm512_mul_epu32(ah, b);
    const __m512i hh = _mm512_mul_epu32(ah, bh);
    const __m512i mid = _mm512_add_epi64(_mm512_add_epi64(_mm512_srli_epi64(ll, 32), _mm512_and_si512(lh, lo32)),
                                         _mm512_and_si512(hl, lo32));
    const __m512i lo = _mm512_or_si512(_mm512_and_si512(ll, lo32), _mm512_slli_epi64(mid, 32));
    const __m512i hi = _mm512_add_epi64(_mm512_add_epi64(hh, _mm512_srli_epi64(lh, 32)),
                                        _mm512_add_epi64(_mm512_srli_epi64(hl, 32), _mm512_srli_epi64(mid, 32)));
    const __m512i x = _mm512_xor_si512(hi, lo);
    // (x * m) split into edge index (high word) and acceptance variate (low word); m < 2^7.
    const __m512i p0 = _mm512_mul_epu32(x, mvec);
    const __m512i p1 = _mm512_mul_epu32(_mm512_srli_epi64(x, 32), mvec);
    const __m512i t = _mm512_add_epi64(p1, _mm512_srli_epi64(p0, 32));
    const __m512i idx = _mm512_srli_epi64(t, 32);
    const __m512i u = _mm512_or_si512(_mm512_slli_epi64(t, 32), _mm512_and_si512(p0, lo32));
    const __m512i bit = _mm512_sllv_epi64(one, idx);
    const __m512i mask = small ? _mm512_permutexvar_epi64(idx, tab) : _mm512_i64gather_epi64(idx, vm, 8);
    const __mmask8 present = _mm512_test_epi64_mask(in, bit);
    const __mmask8 freev = _mm512_testn_epi64_mask(cov, mask);
    const __mmask8 lt_rem = _mm512_cmplt_epu64_mask(u, rem);
    const __mmask8 lt_ins = _mm512_cmplt_epu64_mask(u, ins);
    const __mmask8 flip = static_cast<__mmask8>((present & lt_rem) | (~present & freev & lt_ins));
    in = _mm512_mask_xor_epi64(in, flip, in, bit);
    cov = _mm512_mask_xor_epi64(cov, flip, cov, mask);
  }
  _mm512_storeu_si512(out, in);
}

bool avx512_available() {
  static const bool ok = __builtin_cpu_supports("avx512f");
  return ok;
}
#endif

Matching from_mask(const Graph& g, std::uint64_t mask) {
  Matching out;
  for (int i = 0; i < g.num_edges(); ++i) {
    if ((mask >> i) & 1ULL) out.edges.push_back(g.edges()[i].id);
  }
  return out;
}

}  // namespace

Matching sample_matching(const Graph& g, double lambda, const Schedule& schedule, std::uint64_t seed) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  if (compact_ok(g)) return from_mask(g, CompactChain(g, lambda).run(Rng(seed), schedule.steps));
  EdgeChain chain(g, lambda, Rng(seed));
  chain.run(schedule.steps);
  return chain.current();
}

std::map<Matching, std::uint64_t> sample_histogram(const Graph& g, double lambda, std::uint64_t steps,
                                                   std::uint64_t samples, std::uint64_t seed) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  const Rng root(seed);
  std::map<Matching, std::uint64_t> hist;
  if (compact_ok(g)) {
    CompactChain chain(g, lambda);
    std::map<std::uint64_t, std::uint64_t> by_mask;
    std::uint64_t k = 0;
#ifdef MATCHLAB_HAVE_AVX512_KERNEL
    if (avx512_available()) {
      for (; k + 8 <= samples; k += 8) {
        Rng rngs[8];
        for (int c = 0; c < 8; ++c) rngs[c] = root.split(k + c);
        std::uint64_t out[8];
        run8_avx512(chain, rngs, steps, out);
        for (auto mask : out) ++by_mask[mask];
      }
    }
#endif
    for (; k + 4 <= samples; k += 4) {
      const Rng rngs[4] = {root.split(k), root.split(k + 1), root.split(k + 2), root.split(k + 3)};
      std::uint64_t out[4];
      chain.run4(rngs, steps, out);
      for (auto mask : out) ++by_mask[mask];
    }
    for (; k < samples; ++k) ++by_mask[chain.run(root.split(k), steps)];
    for (auto [mask, count] : by_mask) hist[from_mask(g, mask)] += count;
    return hist;
  }
  for (std::uint64_t k = 0; k < samples; ++k) {
    EdgeChain chain(g, lambda, root.split(k));
    chain.run(steps);
    ++hist[chain.current()];
  }
  return hist;
}

}  // namespace matchlab
