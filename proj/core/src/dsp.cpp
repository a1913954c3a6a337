#include "okse/dsp.hpp"

#include <cmath>

#include "okse/errors.hpp"

namespace okse {

void fft_inplace(std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw InvalidParameterError("fft_inplace: size must be a power of two");
  }
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) {
      j ^= bit;
    }
    j ^= bit;
    if (i < j) {
      std::swap(x[i], x[j]);
    }
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double angle = -2.0 * M_PI / static_cast<double>(len);
    std::complex<double> wn(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = x[i + k];
        std::complex<double> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wn;
      }
    }
  }
}

std::vector<double> magnitude_spectrum(const std::vector<double>& frame) {
  if (frame.empty()) {
    throw InvalidParameterError("magnitude_spectrum: empty frame");
  }
  std::size_t n = 1;
  while (n < frame.size()) {
    n <<= 1;
  }
  std::vector<std::complex<double>> x(n, 0.0);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    x[i] = frame[i];
  }
  fft_inplace(x);
  std::vector<double> mag(n / 2 + 1);
  for (std::size_t i = 0; i <= n / 2; ++i) {
    mag[i] = std::abs(x[i]);
  }
  return mag;
}

}  // namespace okse
