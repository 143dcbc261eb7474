#pragma once

#include <cstdint>

namespace radiosim::rng {

// splitmix64 finalizer. Bijective on 64 bits with full avalanche.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent value from a master seed and up to three stream
// indices (tag, node id, round). Stateless: any cell of the stream can be
// evaluated in isolation, which keeps per-node decision streams and trial
// replays reproducible without per-node generator state.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b = 0,
                               std::uint64_t c = 0) noexcept {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

// Uniform double in [0,1) from the top 53 bits.
constexpr double u01(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Bernoulli(p) draw for stream cell (seed, a, b, c).
inline bool coin(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                 std::uint64_t c, double p) noexcept {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return u01(derive(seed, a, b, c)) < p;
}

// Sequential stream over the same mixer, for places that consume draws in
// order (graph construction, shared-sequence sampling).
class Stream {
 public:
  explicit Stream(std::uint64_t seed)
      : state_(splitmix64(seed ^ 0xbb67ae8584caa73bULL)) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state_);
  }

  double next_u01() noexcept { return u01(next()); }

 private:
  std::uint64_t state_;
};

// Stream tags. Keeping these distinct guarantees that graph construction,
// per-node transmit decisions and the shared round sequence never overlap.
inline constexpr std::uint64_t kTagGraph = 0x01;
inline constexpr std::uint64_t kTagDecision = 0x02;
inline constexpr std::uint64_t kTagSharedSequence = 0x03;

}  // namespace radiosim::rng
