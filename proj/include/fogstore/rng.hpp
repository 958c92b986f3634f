#ifndef FOGSTORE_RNG_HPP
#define FOGSTORE_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace fogstore {

// SplitMix64 generator. Chosen over std::mt19937_64 + distributions because
// the draw sequence must be bit-identical across platforms and standard
// library versions (std::uniform_real_distribution is not portable).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + next_unit() * (hi - lo); }

  // Unbiased integer in [0, n), n >= 1. Rejection sampling keeps the
  // result independent of how close n is to a power of two.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

 private:
  std::uint64_t state_;
};

// Avalanches v into h; used to key independent substreams from
// (seed, run index, role tag, element index) tuples.
inline std::uint64_t mix_key(std::uint64_t h, std::uint64_t v) {
  v += 0x9E3779B97F4A7C15ULL + h;
  v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ULL;
  v = (v ^ (v >> 27)) * 0x94D049BB133111EBULL;
  return v ^ (v >> 31);
}

inline std::uint64_t derive_stream(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x243F6A8885A308D3ULL;
  for (std::uint64_t p : parts) h = mix_key(h, p);
  return h;
}

}  // namespace fogstore

#endif
