#pragma once

#include <cstdint>

namespace permstab {

/// Deterministic 64-bit generator with splittable substreams.
///
/// The core is the SplitMix64 state walk (fixed odd increment, finalizing
/// mix), which depends only on uint64 arithmetic and therefore produces the
/// same stream on every platform. Substreams are derived by folding a stream
/// tag through the same mix, so (seed, tag path) pins every draw of an
/// experiment.
class SplitRng {
public:
  explicit SplitRng(std::uint64_t seed) : state_(mix(seed + kGamma)) {}

  /// Independent substream addressed by a tag. Splitting never disturbs the
  /// parent stream.
  SplitRng split(std::uint64_t tag) const {
    return SplitRng(state_ ^ mix(tag ^ 0xA5A5A5A55A5A5A5Aull));
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform in [0, bound), bound >= 1. Rejection sampling keeps the result
  /// unbiased and platform-independent.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % bound;
  }

  /// Fair coin.
  bool next_bool() { return (next_u64() & 1u) != 0; }

private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace permstab
