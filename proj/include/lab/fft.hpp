#pragma once

#include <complex>
#include <vector>

namespace lab::fft {

// In-place radix-2 decimation-in-time transform, x.size() a power of two.
// forward computes X[k] = sum_n x[n] e^{-2*pi*i*n*k/N}; inverse undoes it
// (including the 1/N factor).
void forward(std::vector<std::complex<double>>& x);
void inverse(std::vector<std::complex<double>>& x);

bool is_pow2(std::size_t n);

}  // namespace lab::fft
