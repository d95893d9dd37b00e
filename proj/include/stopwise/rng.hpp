#pragma once

#include <cstdint>

namespace stopwise {

// Counter-based splitmix64 stream. The state is just a counter derived from
// (seed, stream), so any (seed, stream, draw index) triple maps to the same
// value on every platform and thread schedule.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream)
      : counter_(mix(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))) {}

  uint64_t next() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return mix(counter_);
  }

  // Uniform on the open interval (0,1): 53 random bits centered in the bin,
  // so neither endpoint can ever be produced.
  double next_unit() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) by multiply-shift rejection.
  uint64_t next_below(uint64_t bound) {
    uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    uint64_t low = static_cast<uint64_t>(m);
    if (low < bound) {
      uint64_t t = (0 - bound) % bound;
      while (low < t) {
        x = next();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t counter_;
};

}  // namespace stopwise
