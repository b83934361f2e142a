#pragma once

#include <complex>

namespace tubewf::fft {

/// In-place complex DFT, FFTW backend (plans cached, FFTW_ESTIMATE only so
/// results are deterministic run to run). sign = -1 forward, +1 backward
/// (unnormalized, as in FFTW).
void dft_1d(std::complex<double>* data, int n, int sign);

/// Row-major n0 x n1 transform, same conventions.
void dft_2d(std::complex<double>* data, int n0, int n1, int sign);

}  // namespace tubewf::fft
