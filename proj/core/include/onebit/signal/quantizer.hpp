// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "onebit/types.hpp"

namespace onebit {

/// sign: -1 for x <= 0, +1 otherwise.
constexpr double one_bit_sign(double x) noexcept { return x > 0.0 ? 1.0 : -1.0; }

/// Q(z) = sign(Re z) + j sign(Im z).
inline cd quantize_1bit(cd z) noexcept { return {one_bit_sign(z.real()), one_bit_sign(z.imag())}; }

/// Elementwise 1-bit quantizer.
[[nodiscard]] CMatrix quantize_1bit(const CMatrix& y);

/// True when every entry is one of +-1 +- j.
[[nodiscard]] bool is_quantized(const CMatrix& r) noexcept;

}  // namespace onebit
