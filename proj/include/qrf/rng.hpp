#pragma once

#include <cstdint>
#include <string_view>

namespace qrf {

/// Deterministic pseudo-random generator (splitmix64, Steele/Lea/Flood
/// constants). All randomness in the library flows through this generator so
/// any run replays exactly from a single 64-bit seed on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi]. Requires lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  /// Uniform double in [0, 1) with 53 significant bits.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t x) {
  SplitMix64 g(x);
  return g.next();
}

/// Seed for case `index` of a named stream. Pinning cases to
/// (seed, stream, index) lets a reported counterexample be replayed in
/// isolation, independent of how many other cases ran before it.
inline std::uint64_t case_seed(std::uint64_t master, std::string_view stream,
                               std::uint64_t index) {
  return mix64(mix64(master ^ fnv1a64(stream)) + index);
}

}  // namespace qrf
