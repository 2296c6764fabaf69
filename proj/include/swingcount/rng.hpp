#pragma once

#include <cstdint>
#include <utility>

namespace swingcount {

/// Counter-based generator, algorithm id "splitmix64-ctr/1".
///
///   bits(counter) = splitmix64_mix(seed + (counter + 1) * 0x9E3779B97F4A7C15)
///
/// so bits(0), bits(1), ... is exactly the SplitMix64 output sequence for
/// `seed`. Uniforms take the top 53 bits; normals use Box-Muller on two
/// uniforms. Any implementation reproducing the mix function reproduces
/// every stream.
class CounterRng {
 public:
  static constexpr const char* kAlgorithm = "splitmix64-ctr/1";

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const;
  /// [0, 1)
  double uniform(std::uint64_t counter) const;
  /// Two independent standard normals from counters c0 and c1.
  std::pair<double, double> normal_pair(std::uint64_t c0, std::uint64_t c1) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Sequential cursor over a CounterRng.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.uniform(next_++); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  std::uint64_t bits() { return rng_.bits(next_++); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace swingcount
