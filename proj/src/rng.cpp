#include "swingcount/rng.hpp"

#include <cmath>
#include <numbers>

namespace swingcount {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const { return mix(seed_ + (counter + 1) * kGamma); }

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

std::pair<double, double> CounterRng::normal_pair(std::uint64_t c0, std::uint64_t c1) const {
  const double u1 = 1.0 - uniform(c0);  // (0, 1]
  const double u2 = uniform(c1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

int RngStream::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(bits() % span);
}

}  // namespace swingcount
