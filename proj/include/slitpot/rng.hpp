#pragma once

#include <cstdint>

namespace slitpot {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// SplitMix64 generator. Small state, so one instance per sample is cheap.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return splitmix64_mix(state_);
  }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Seed of sample `index` in stream `stream` of a run seeded with `master`.
/// Each sample owns its generator, so results do not depend on scheduling.
inline std::uint64_t sample_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
  std::uint64_t h = splitmix64_mix(master ^ 0x6a09e667f3bcc909ull);
  h = splitmix64_mix(h ^ (stream * 0x9e3779b97f4a7c15ull));
  return splitmix64_mix(h ^ (index + 0x3c6ef372fe94f82bull));
}

}  // namespace slitpot
