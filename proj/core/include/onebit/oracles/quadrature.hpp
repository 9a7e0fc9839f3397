// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "onebit/types.hpp"

namespace onebit::oracle {

/// E[y | y in (lo, hi]] for y ~ N(z, noise_variance / 2) by adaptive
/// Gauss-Kronrod quadrature of y p(y) and p(y) over the interval. Infinite
/// bounds are allowed; the integration window is cut 40 standard deviations
/// past the mass.
[[nodiscard]] double truncated_gaussian_mean(double lo, double hi, double z, double noise_variance);

/// Both real dimensions: the quantization cell of r (Re r > 0 means
/// (0, inf), otherwise (-inf, 0]) fed to truncated_gaussian_mean.
[[nodiscard]] cd conditional_mean_quadrature(cd r, cd z, double noise_variance);

}  // namespace onebit::oracle
