// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "onebit/numerics/special_functions.hpp"
#include "onebit/types.hpp"

namespace onebit {

/// Conditional mean of the unquantized receive vector, E[y | r, z], for
/// y = z + eta with eta ~ CN(0, noise_variance I) and r = Q(y). Elementwise:
///   y_i = s (Re r_i m(w_R) + j Im r_i m(w_I)) + z_i,  s = sigma / sqrt(2),
///   w_R = Re r_i Re z_i / s,  w_I = Im r_i Im z_i / s,  m = phi / Phi.
/// Finite for every finite z.
[[nodiscard]] CVector e_step(const CVector& r, const CVector& z, double noise_variance,
                             MillsRatioFn mills = mills_ratio);

/// Scalar form for one real dimension: E[y | sign(y) = r, z] with
/// y ~ N(z, noise_variance / 2).
[[nodiscard]] double e_step_real(double r, double z, double noise_variance,
                                 MillsRatioFn mills = mills_ratio) noexcept;

}  // namespace onebit
