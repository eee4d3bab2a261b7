#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace isac {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Folds a root seed and a path of integer keys into one stream seed:
/// s = splitmix64(... splitmix64(splitmix64(root) ^ k0) ^ k1 ...).
constexpr std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = splitmix64(root);
  for (auto k : keys) s = splitmix64(s ^ k);
  return s;
}

/// Stream tags, so that streams for different purposes never collide.
enum class StreamTag : std::uint64_t {
  CommPhase = 1,
  CommScatter = 2,
  RadarPhase = 3,
  Randomization = 4,
  Trial = 5,
};

/// Portable random stream: std::mt19937_64 (bit-exact by the standard) with
/// uniform and normal transforms written out here, since the standard
/// distributions are implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  RandomStream(std::uint64_t root, StreamTag tag, std::initializer_list<std::uint64_t> keys)
      : engine_(mix(root, tag, keys)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; one pair is drawn per call and the second
  /// value is discarded so every call consumes exactly two engine outputs.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double phase() { return 2.0 * std::numbers::pi * uniform(); }

 private:
  static std::uint64_t mix(std::uint64_t root, StreamTag tag, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = splitmix64(splitmix64(root) ^ static_cast<std::uint64_t>(tag));
    for (auto k : keys) s = splitmix64(s ^ k);
    return s;
  }

  std::mt19937_64 engine_;
};

}  // namespace isac
