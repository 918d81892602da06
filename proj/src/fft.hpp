#pragma once

#include <complex>

// Unnormalized 2-D complex DFT on an N x N row-major array, FFTW backend.
// sign -1: sum e^{-2 pi i jk/N}, sign +1: conjugate exponent. Plans are
// created once per (N, sign) with FFTW_ESTIMATE (deterministic choice) and
// executed through the new-array interface, so calls are thread-safe.

namespace fiohardy {

void dft2d(int N, const std::complex<double>* in, std::complex<double>* out, int sign);

} // namespace fiohardy
