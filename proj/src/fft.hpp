#pragma once

#include <complex>
#include <span>
#include <vector>

namespace vexp::fft {

// Thin FFTW wrappers. Forward is unnormalized, inverse carries the 1/n
// factor, so inverse(forward(x)) == x up to roundoff. Plans are cached per
// size behind a mutex; execution itself is thread-safe.
std::vector<std::complex<double>> forward(
    std::span<const std::complex<double>> in);
std::vector<std::complex<double>> inverse(
    std::span<const std::complex<double>> in);

}  // namespace vexp::fft
