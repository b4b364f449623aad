#pragma once

#include <cmath>
#include <cstdint>

namespace capcert {

// Counter-based stream: the i-th output is a fixed 64-bit mix of
// (key, i), so a stream can be replayed or split without shared state.
// Sub-streams derive a fresh key from (key, task index), which keeps
// results independent of execution order and worker count.
//
// Normal variates use the Marsaglia polar method over 53-bit uniforms;
// two implementations following this note match distributionally.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : key_(mix(seed ^ kSeedTag)), counter_(0) {}

  /// Derived stream for a logical sub-task; independent of draws made here.
  RandomStream split(std::uint64_t task_index) const {
    return RandomStream(FromKey{}, mix(key_ ^ mix(task_index ^ kSplitTag)));
  }

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via the polar method; the spare variate is cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

 private:
  struct FromKey {};
  RandomStream(FromKey, std::uint64_t key) : key_(key), counter_(0) {}

  // splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t kSeedTag = 0x636170636572740aULL;
  static constexpr std::uint64_t kSplitTag = 0x73706c69740a0a0aULL;

  std::uint64_t key_;
  std::uint64_t counter_;
  double spare_ = 0.0;
  bool have_spare_ = false;

  friend std::uint64_t derive_seed(std::uint64_t, std::uint64_t);
};

/// Stable 64-bit seed for a named sub-purpose of a run seed, so distinct
/// phases of one experiment never share a stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return RandomStream::mix(RandomStream::mix(seed) ^ salt);
}

}  // namespace capcert
