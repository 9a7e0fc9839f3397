// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "onebit/numerics/rng.hpp"
#include "onebit/types.hpp"

namespace onebit {

/// M x T circularly-symmetric complex Gaussian noise with E|eta|^2 = variance
/// (variance / 2 per real dimension). Throws ConfigError for variance <= 0.
[[nodiscard]] CMatrix draw_awgn(Index rows, Index cols, double variance, RngStream& rng);

/// K x nbits matrix of independent fair bits.
[[nodiscard]] BitMatrix draw_bits(Index rows, Index cols, RngStream& rng);

}  // namespace onebit
