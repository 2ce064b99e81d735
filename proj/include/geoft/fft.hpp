#pragma once

// Complex FFT used by the sheared-lattice transform path and the periodic
// spectral operators. Iterative radix-2 for power-of-two lengths, Bluestein's
// chirp-z reduction for everything else. Unnormalized:
//   sign=-1:  X[j] = sum_k x[k] e^{-2 pi i jk/N}
//   sign=+1:  X[j] = sum_k x[k] e^{+2 pi i jk/N}
// Single-threaded and allocation-stable, so outputs are bitwise reproducible.

#include <vector>

#include "geoft/core.hpp"

namespace geoft {
namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_pow2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  // bit reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

// Bluestein: DFT of arbitrary length via one power-of-two convolution.
inline void fft_bluestein(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n + 1) m <<= 1;

  // chirp c[k] = exp(sign * pi i k^2 / n); use k^2 mod 2n to keep the
  // trig argument small and exactly periodic.
  std::vector<Complex> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = (k * k) % (2 * n);
    const double ang = sign * kPi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = Complex(std::cos(ang), std::sin(ang));
  }
  std::vector<Complex> u(m, Complex(0, 0)), v(m, Complex(0, 0));
  for (std::size_t k = 0; k < n; ++k) u[k] = a[k] * chirp[k];
  v[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k)
    v[k] = v[m - k] = std::conj(chirp[k]);

  fft_pow2(u, -1);
  fft_pow2(v, -1);
  for (std::size_t k = 0; k < m; ++k) u[k] *= v[k];
  fft_pow2(u, +1);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = u[k] * inv_m * chirp[k];
}

}  // namespace detail

inline void fft_1d(std::vector<Complex>& a, int sign) {
  if (detail::is_pow2(a.size()))
    detail::fft_pow2(a, sign);
  else
    detail::fft_bluestein(a, sign);
}

// In-place transform along every axis of a row-major multi-dimensional array
// (last axis fastest).
inline void fft_nd(std::vector<Complex>& data, const std::vector<int>& shape,
                   int sign) {
  std::size_t total = 1;
  for (int n : shape) total *= static_cast<std::size_t>(n);
  if (data.size() != total)
    fail(ErrorKind::DimensionMismatch, "fft_nd: data size does not match shape");

  const int rank = static_cast<int>(shape.size());
  std::size_t stride = 1;  // stride of the current axis, built from the last
  for (int ax = rank - 1; ax >= 0; --ax) {
    const std::size_t n = static_cast<std::size_t>(shape[ax]);
    const std::size_t block = n * stride;
    std::vector<Complex> line(n);
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t k = 0; k < n; ++k) line[k] = data[base + off + k * stride];
        fft_1d(line, sign);
        for (std::size_t k = 0; k < n; ++k) data[base + off + k * stride] = line[k];
      }
    }
    stride *= n;
  }
}

}  // namespace geoft
