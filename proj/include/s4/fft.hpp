// FFT backend for kernel recovery and convolution. Power-of-two lengths use
// an iterative radix-2 transform; other lengths go through Bluestein's
// chirp-z reduction, with a direct quadratic DFT for small awkward sizes.
// All temporaries come from the counted scratch allocator.
#pragma once

#include <complex>
#include <cstddef>

#include "s4/scratch.hpp"

namespace s4::fft {

using Complex = std::complex<double>;
using Buffer = scratch::vector<Complex>;

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

// X_k = sum_m x_m exp(-2*pi*i*k*m/n), in place.
void forward(Buffer& x);

// x_m = (1/n) sum_k X_k exp(+2*pi*i*k*m/n), in place.
void inverse(Buffer& x);

}  // namespace s4::fft
