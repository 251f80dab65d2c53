#include "dct.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace softwell::detail {

namespace {

// Iterative radix-2 Cooley-Tukey, in place. n must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace

std::vector<double> dct2(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("dct2 requires a power-of-two length");
  }
  // Even samples forward, odd samples reversed; one complex FFT then a
  // half-sample phase shift recovers the DCT-II.
  std::vector<std::complex<double>> v(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    v[i] = x[2 * i];
    v[n - 1 - i] = x[2 * i + 1];
  }
  if (n == 1) v[0] = x[0];
  fft_inplace(v);

  std::vector<double> out(n);
  out[0] = v[0].real();
  for (std::size_t k = 1; k < n; ++k) {
    const double ang = -std::numbers::pi * static_cast<double>(k) /
                       (2.0 * static_cast<double>(n));
    const std::complex<double> w = std::polar(2.0, ang);
    out[k] = (w * v[k]).real();
  }
  return out;
}

}  // namespace softwell::detail
