#pragma once

#include <cstdint>
#include <random>

namespace riemprod {

/// SplitMix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `index` under `seed`. Streams derived from distinct
/// (seed, index) pairs are decorrelated and independent of call order.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Seeded uniform source. Output depends only on the seed: the uniform
/// mapping is done by hand instead of through std::uniform_real_distribution,
/// whose algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  Rng split(std::uint64_t index) { return Rng(substream(engine_(), index)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace riemprod
