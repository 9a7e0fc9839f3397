// SPDX-License-Identifier: Apache-2.0
#include "onebit/signal/noise.hpp"

#include <cmath>

#include "onebit/error.hpp"

namespace onebit {

CMatrix draw_awgn(Index rows, Index cols, double variance, RngStream& rng) {
  if (!(variance > 0.0)) throw ConfigError("draw_awgn: noise variance must be positive");
  const double sigma = std::sqrt(variance / 2.0);
  CMatrix noise(rows, cols);
  for (Index i = 0; i < noise.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    noise.data()[i] = cd(sigma * re, sigma * im);
  }
  return noise;
}

BitMatrix draw_bits(Index rows, Index cols, RngStream& rng) {
  BitMatrix bits(rows, cols);
  std::uint64_t word = 0;
  int left = 0;
  for (Index i = 0; i < bits.size(); ++i) {
    if (left == 0) {
      word = rng.next_u64();
      left = 64;
    }
    bits.data()[i] = static_cast<std::uint8_t>(word & 1U);
    word >>= 1;
    --left;
  }
  return bits;
}

}  // namespace onebit
