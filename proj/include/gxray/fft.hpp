#pragma once

#include <gxray/common.hpp>

#include <span>

namespace gxray::detail {

// Unnormalized in-place DFT: out_k = sum_n x_n e^{sign 2 pi i k n / N}.
// sign = -1 is the forward transform.
void fft_inplace(std::span<cplx> data, int sign);

}  // namespace gxray::detail
