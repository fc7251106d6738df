#pragma once

#include <complex>

namespace stratsim::detail {

// Unnormalized c2c 2D transforms on n*n row-major arrays, out-of-place
// (in != out). Plans are cached per (n, direction) and created with
// FFTW_ESTIMATE so results are reproducible run to run; execution through
// the new-array interface is safe to call concurrently.
void fft_forward(int n, const std::complex<double>* in, std::complex<double>* out);
void fft_backward(int n, const std::complex<double>* in, std::complex<double>* out);

}  // namespace stratsim::detail
