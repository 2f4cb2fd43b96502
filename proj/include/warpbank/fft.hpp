#pragma once

#include <complex>
#include <span>
#include <vector>

namespace warpbank {

using cplx = std::complex<double>;

// In-place unnormalized DFTs backed by FFTW. forward uses exp(-2 pi i jn/N),
// backward exp(+2 pi i jn/N). Safe to call from several threads.
void fft_forward(std::span<cplx> data);
void fft_backward(std::span<cplx> data);

/// Unitary spectrum: forward DFT scaled by 1/sqrt(N).
std::vector<cplx> unitary_spectrum(std::span<const cplx> signal);

/// Inverse of unitary_spectrum.
std::vector<cplx> unitary_inverse(std::span<const cplx> spectrum);

}  // namespace warpbank
