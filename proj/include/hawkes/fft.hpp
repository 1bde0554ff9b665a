#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hawkes {

using cplx = std::complex<double>;

// In-place iterative radix-2 FFT; size must be a power of two.
void fft_pow2(std::vector<cplx>& a, bool inverse);

// DFT of arbitrary size via Bluestein's chirp-z reduction to a power-of-two
// convolution. Forward: X_k = sum_j x_j e^{-2pi i jk / n}. Inverse divides by n.
std::vector<cplx> dft(const std::vector<cplx>& x, bool inverse);

std::size_t next_pow2(std::size_t n);

// Circular convolution of two real vectors of equal (arbitrary) length.
std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b);

// Linear convolution, output size a+b-1, via zero-padded power-of-two FFT.
std::vector<double> linear_convolve_fft(const std::vector<double>& a,
                                        const std::vector<double>& b);

} // namespace hawkes
