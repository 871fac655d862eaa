#include "fgt1d/rng.hpp"

#include <cmath>

namespace fgt::rng {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t counter_rand(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t i) {
  return mix64(mix64(seed ^ stream * 0xA24BAED4963EE407ull) +
               i * 0x9E3779B97F4A7C15ull);
}

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t i) {
  return static_cast<double>(counter_rand(seed, stream, i) >> 11) * 0x1.0p-53;
}

std::vector<double> uniform_points(std::size_t count, std::uint64_t seed,
                                   std::uint64_t stream) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = uniform01(seed, stream, i);
  return out;
}

std::vector<double> chebyshev_points(std::size_t count) {
  const double pi = 3.14159265358979323846;
  std::vector<double> out(count);
  for (std::size_t i = 1; i <= count; ++i)
    out[i - 1] =
        (1.0 + std::cos(pi * (2.0 * static_cast<double>(i) - 1.0) /
                        (2.0 * static_cast<double>(count)))) /
        2.0;
  return out;
}

}  // namespace fgt::rng
