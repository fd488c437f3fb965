#pragma once

#include "friedrichs/common.hpp"

namespace friedrichs {

// Unnormalized in-place DFT: sign = -1 forward, +1 backward. Plans are cached per (size, sign).
void fft_inplace(cvec& data, int sign);

}  // namespace friedrichs
