#pragma once

// Iterative radix-2 FFT (forward convention X_m = sum_j x_j e^{-2 pi i m j / n})
// for power-of-two sizes.  Twiddles come from a directly evaluated table so
// per-element accuracy stays at a few ulps.  Only used on size-1024 transforms
// by the rational approximation construction.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fgt::internal {

inline void fft_pow2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return;
  if (n & (n - 1))
    throw std::invalid_argument("fft_pow2 requires a power-of-two size");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<std::complex<double>> tw(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    double ang = -two_pi * static_cast<double>(j) / static_cast<double>(n);
    tw[j] = {std::cos(ang), std::sin(ang)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> u = a[i + j];
        std::complex<double> v = a[i + j + len / 2] * tw[j * stride];
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

}  // namespace fgt::internal
