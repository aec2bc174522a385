#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ckdv::fft {

// In-place complex transforms, FFTW backed. Plans are cached per size and
// created with FFTW_ESTIMATE so results are bit-identical across runs.
// Unnormalized, standard sign convention: forward applies e^{-2*pi*i*jk/N}.
void forward(std::vector<std::complex<double>>& data);
void inverse(std::vector<std::complex<double>>& data);

} // namespace ckdv::fft
