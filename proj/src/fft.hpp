#pragma once
// Thin RAII wrapper around FFTW. Planning is serialized (FFTW planners are not
// thread-safe); execution on caller-owned buffers is.

#include <complex>
#include <cstddef>
#include <span>

namespace guardopt::detail {

enum class FftDirection { forward, inverse };

/// Unnormalized in-place complex DFT of `data`.
void fft_inplace(std::span<std::complex<double>> data, FftDirection dir);

}  // namespace guardopt::detail
