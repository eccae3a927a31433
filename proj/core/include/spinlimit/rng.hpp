#pragma once

#include <cstdint>

namespace spinlimit {

/// Counter-based generator: output i is the SplitMix64 finalizer applied to
/// key + i * golden-gamma. Any index can be drawn directly, so work split
/// across threads or processes by index range reproduces a serial run.
///
/// Streams: substream(id) derives an independent key from (key, id); every
/// per-sample or per-trial stream in the library is substream(index) of a
/// master seed.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) : key_(mix(key)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix(key_ + (counter + 1) * kGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  constexpr CounterRng substream(std::uint64_t id) const {
    return CounterRng(key_ ^ mix(id * kGamma + 0x632be59bd9b4e019ULL));
  }

  constexpr std::uint64_t key() const { return key_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
};

/// Sequential view over one CounterRng stream.
class RngStream {
 public:
  explicit constexpr RngStream(CounterRng rng) : rng_(rng) {}

  constexpr std::uint64_t next_bits() { return rng_.bits(counter_++); }
  constexpr double uniform() { return rng_.uniform(counter_++); }

  /// Unbiased integer in [lo, hi] by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  std::uint64_t position() const { return counter_; }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace spinlimit
