// SPDX-License-Identifier: Apache-2.0
#include "onebit/signal/quantizer.hpp"

#include <cmath>

namespace onebit {

CMatrix quantize_1bit(const CMatrix& y) {
  return y.unaryExpr([](const cd& z) { return quantize_1bit(z); });
}

bool is_quantized(const CMatrix& r) noexcept {
  for (Index i = 0; i < r.size(); ++i) {
    const cd v = r.data()[i];
    if (std::abs(v.real()) != 1.0 || std::abs(v.imag()) != 1.0) return false;
  }
  return true;
}

}  // namespace onebit
