#pragma once

#include <vector>

#include "vhp/util.hpp"

namespace vhp {

// In-place complex DFT with kernel e^{-2 pi i jk/N} (sign=-1) or its inverse
// kernel (sign=+1, unnormalized). Radix-2 when N is a power of two, O(N^2)
// fallback otherwise. Desk-scale sizes only.
void dft(std::vector<complexd>& a, int sign);

// Convention helpers: forward includes the 1/N normalization so coefficients
// are Fourier-series coefficients; inverse multiplies back.
void fft_forward(std::vector<complexd>& a);
void fft_inverse(std::vector<complexd>& a);

}  // namespace vhp
