#pragma once

#include <vector>

#include "opmod/matrix.hpp"

namespace opmod {

// Thin FFTW wrapper.  Planning is serialized internally (FFTW plan creation
// is not thread-safe); execution on distinct buffers is safe, so concurrent
// transforms of distinct inputs are fine.

/// Forward DFT: out_k = sum_j in_j e^{-2 pi i jk/N}.  Unnormalized.
std::vector<cplx> fft_forward(const std::vector<cplx>& in);

/// Inverse DFT normalized by 1/N, so fft_inverse(fft_forward(x)) == x.
std::vector<cplx> fft_inverse(const std::vector<cplx>& in);

} // namespace opmod
