#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace pddforge {

int64_t next_pow2(int64_t n);

// In-place radix-2 FFT. n must be a power of two. Unnormalized in both
// directions: ifft(fft(x)) == n * x.
void fft_inplace(std::complex<double>* a, int64_t n, bool inverse);

}  // namespace pddforge
