#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ppdo {

// Stream tags keep independent random consumers from colliding even when they
// share the master seed and the same (agent, k) coordinates.
enum class StreamTag : std::uint64_t {
  kEdgeActivation = 0x45444745,
  kWeights = 0x57454947,
  kInitialState = 0x494e4954,
  kProblem = 0x50524f42,
  kNoise = 0x4e4f4953,
  kKey = 0x4b455920,
  kSampling = 0x53414d50,
  kTrial = 0x54524941,
  kTheory = 0x5448454f,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds a list of coordinates into a single 64-bit key.
inline constexpr std::uint64_t mix_key(std::uint64_t seed, StreamTag tag,
                                       std::initializer_list<std::uint64_t> coords) noexcept {
  std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tag)));
  for (auto c : coords) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

// Uniform double in [0, 1) from the top 53 bits of a key.
inline constexpr double unit_from_key(std::uint64_t key) noexcept {
  return static_cast<double>(key >> 11) * 0x1.0p-53;
}

/// SplitMix64 engine satisfying UniformRandomBitGenerator.
///
/// Every random consumer in the library derives one of these from
/// (master seed, tag, coordinates) instead of sharing a global engine, so any
/// quantity can be regenerated without replaying history.
class KeyedRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr KeyedRng(std::uint64_t state) noexcept : state_(state) {}
  KeyedRng(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> coords) noexcept
      : state_(mix_key(seed, tag, coords)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [lo, hi]. Written out instead of std::uniform_real_distribution
  // so the draw is identical across standard library implementations.
  constexpr double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * unit_from_key((*this)());
  }

 private:
  std::uint64_t state_;
};

}  // namespace ppdo
