#pragma once

#include <cstdint>

namespace dtwaug {

/// Finalizer step of the splitmix64 generator; a good 64-bit mixing function.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Small deterministic PRNG (splitmix64). Fully specified arithmetic, so
/// streams are reproducible across platforms and standard library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound). bound must be nonzero. Unbiased via
  /// rejection sampling.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Derives an independent substream seed from a master seed and two stream
/// coordinates. Used to give every (class, generation) pair its own stream so
/// results do not depend on generation order.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a,
                                   std::uint64_t b) noexcept {
  std::uint64_t h = mix64(master + 0x9E3779B97F4A7C15ull);
  h = mix64(h ^ (a + 0x9E3779B97F4A7C15ull));
  h = mix64(h ^ (b + 0x9E3779B97F4A7C15ull));
  return h;
}

}  // namespace dtwaug
