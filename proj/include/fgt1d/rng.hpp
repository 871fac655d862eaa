#pragma once

#include <cstdint>
#include <vector>

namespace fgt::rng {

// Counter-based deterministic RNG: every value is a pure function of
// (seed, stream, index), so data sets are reproducible across runs, platforms
// and thread counts.
//
//   mix64(z): z += 0x9E3779B97F4A7C15;
//             z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//             z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//             z ^= (z >> 31);
//
//   counter_rand(seed, stream, i) =
//       mix64(mix64(seed ^ stream * 0xA24BAED4963EE407)
//             + i * 0x9E3779B97F4A7C15)
//
//   uniform01 = (counter_rand >> 11) * 2^-53   in [0, 1)
std::uint64_t mix64(std::uint64_t z);
std::uint64_t counter_rand(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t i);
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t i);

// Stream assignments used by the benchmark driver.
inline constexpr std::uint64_t kStreamSources = 0;
inline constexpr std::uint64_t kStreamStrengths = 1;
inline constexpr std::uint64_t kStreamEvalIndices = 2;
inline constexpr std::uint64_t kStreamTargets = 3;

// count uniform draws from the given stream, entries uniform01(seed, stream, i).
std::vector<double> uniform_points(std::size_t count, std::uint64_t seed,
                                   std::uint64_t stream);

// Clustered deterministic point set on [0, 1]:
// p_i = (1 + cos(pi (2 i - 1) / (2 count))) / 2, i = 1..count.
std::vector<double> chebyshev_points(std::size_t count);

}  // namespace fgt::rng
