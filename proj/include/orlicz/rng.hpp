#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace orlicz {

// Counter-based random stream. Each draw hashes (key, counter) through the
// splitmix64 finalizer, so a stream is fully determined by (master seed,
// stream id) and draws can be reproduced regardless of scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : key_(mix(master_seed ^ mix(stream_id + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    return mix(z);
  }

  // Uniform in [0, 1).
  double next_double() {
    return (next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return next_double() < p;
  }

  // Index drawn from cumulative weights (nondecreasing, back() == 1).
  std::size_t next_categorical(const std::vector<double>& cum) {
    double u = next_double();
    std::size_t lo = 0, hi = cum.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (u < cum[mid]) hi = mid; else lo = mid + 1;
    }
    return lo;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace orlicz
