#pragma once

#include <cstdint>
#include <limits>

namespace matchlab {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64x64 -> 128 multiply folded to 64 bits (the wyhash mixer).
inline constexpr std::uint64_t wymix(std::uint64_t a, std::uint64_t b) {
  const auto p = static_cast<unsigned __int128>(a) * b;
  return static_cast<std::uint64_t>(p >> 64) ^ static_cast<std::uint64_t>(p);
}

/// Counter-based generator: the i-th output of a stream is wymix(s, s ^ c) with
/// s = key + i * step (wyrand). Streams are derived by hashing (parent key,
/// stream id), so chains seeded from one root never need to coordinate.
/// Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : state_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++count_;
    state_ += kWyStep;
    return wymix(state_, state_ ^ kWyXor);
  }

  /// Independent child stream keyed on this stream's origin, so it does not
  /// depend on how many values have been drawn.
  Rng split(std::uint64_t stream) const {
    Rng child;
    const std::uint64_t key = state_ - count_ * kWyStep;
    child.state_ = mix64(key ^ mix64(stream + kGolden));
    return child;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n) by multiply-high; bias is at most n / 2^64.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
  }

  /// Internal counter state; the next output is wymix(s + kWyStep, (s + kWyStep) ^ kWyXor).
  /// Exposed for vectorized kernels that replay many streams in lockstep.
  std::uint64_t state() const { return state_; }
  static constexpr std::uint64_t kWyStep = 0xa0761d6478bd642fULL;
  static constexpr std::uint64_t kWyXor = 0xe7037ed1a0b428dbULL;

  /// Number of outputs drawn so far.
  std::uint64_t counter() const { return count_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_ = 0;
  std::uint64_t count_ = 0;
};

/// Stable 64-bit hash of a string (FNV-1a followed by a finalizer).
inline std::uint64_t hash_name(const char* s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (; *s; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

}  // namespace matchlab
