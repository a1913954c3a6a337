#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace okse {

/// In-place iterative radix-2 FFT; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& x);

/// Magnitude spectrum of a real frame (zero-padded to the next power of
/// two); returns bins 0 .. N/2.
std::vector<double> magnitude_spectrum(const std::vector<double>& frame);

}  // namespace okse
