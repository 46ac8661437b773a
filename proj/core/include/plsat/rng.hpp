#pragma once

#include <cstdint>

namespace plsat {

// splitmix64 finalizer. Good enough avalanche for seed derivation and
// counter-based streams.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Minimal splitmix64 generator. Streams derived via derive_stream are
// independent for distinct (seed, index) pairs in any practical sense.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() {
    return (next() >> 11) * 0x1.0p-53;
  }

  // uniform in [0, bound) without modulo bias
  uint64_t bounded(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool coin() { return next() >> 63; }

 private:
  uint64_t state_;
};

// Pure function of (master, index): the substream seed for item `index`.
// Used per clause so generation order and thread count never matter.
inline uint64_t derive_stream(uint64_t master, uint64_t index) {
  return mix64(master ^ mix64(index + 0x6a09e667f3bcc909ULL));
}

// Seed for sweep cell (i, j), instance t.
inline uint64_t derive_cell_seed(uint64_t master, uint64_t i, uint64_t j,
                                 uint64_t t) {
  uint64_t h = mix64(master ^ 0x243f6a8885a308d3ULL);
  h = mix64(h ^ mix64(i + 0x13198a2e03707344ULL));
  h = mix64(h ^ mix64(j + 0xa4093822299f31d0ULL));
  h = mix64(h ^ mix64(t + 0x082efa98ec4e6c89ULL));
  return h;
}

}  // namespace plsat
