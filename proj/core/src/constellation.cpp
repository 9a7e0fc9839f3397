// SPDX-License-Identifier: Apache-2.0
#include "onebit/signal/constellation.hpp"

#include <cmath>

#include "onebit/error.hpp"

namespace onebit {
namespace {

// Per-rail slicer in unscaled grid units. Ties go to the level with the
// smaller 2-bit label: -2 -> -3 (00), 0 -> -1 (01), +2 -> +3 (10).
int slice_rail(double v) noexcept {
  if (v <= -2.0) return 0b00;
  if (v <= 0.0) return 0b01;
  if (v < 2.0) return 0b11;
  return 0b10;
}

}  // namespace

int Qam16::gray_level(int two_bits) noexcept {
  switch (two_bits & 0b11) {
    case 0b00: return -3;
    case 0b01: return -1;
    case 0b11: return 1;
    default: return 3;
  }
}

Qam16::Qam16(double symbol_energy) : energy_(symbol_energy), scale_(std::sqrt(symbol_energy / 10.0)) {
  if (!(symbol_energy > 0.0)) throw ConfigError("Qam16: symbol energy must be positive");
  for (int label = 0; label < kOrder; ++label) {
    const double re = gray_level(label >> 2);
    const double im = gray_level(label & 0b11);
    points_[static_cast<std::size_t>(label)] = scale_ * cd(re, im);
  }
}

std::uint8_t Qam16::decide(cd estimate) const noexcept {
  const int hi = slice_rail(estimate.real() / scale_);
  const int lo = slice_rail(estimate.imag() / scale_);
  return static_cast<std::uint8_t>((hi << 2) | lo);
}

SymbolFrame Qam16::modulate(const BitMatrix& bits) const {
  if (bits.cols() % kBitsPerSymbol != 0) {
    throw ShapeError("Qam16::modulate: bit count per user must be a multiple of 4");
  }
  const Index users = bits.rows();
  const Index symbols = bits.cols() / kBitsPerSymbol;
  SymbolFrame frame{CMatrix(users, symbols), bits};
  for (Index t = 0; t < symbols; ++t) {
    for (Index k = 0; k < users; ++k) {
      int label = 0;
      for (int b = 0; b < kBitsPerSymbol; ++b) label = (label << 1) | (bits(k, kBitsPerSymbol * t + b) & 1);
      frame.symbols(k, t) = points_[static_cast<std::size_t>(label)];
    }
  }
  return frame;
}

BitMatrix Qam16::demodulate_hard(const CMatrix& estimates) const {
  BitMatrix bits(estimates.rows(), estimates.cols() * kBitsPerSymbol);
  for (Index t = 0; t < estimates.cols(); ++t) {
    for (Index k = 0; k < estimates.rows(); ++k) {
      const std::uint8_t label = decide(estimates(k, t));
      for (int b = 0; b < kBitsPerSymbol; ++b) {
        bits(k, kBitsPerSymbol * t + b) = static_cast<std::uint8_t>((label >> (3 - b)) & 1U);
      }
    }
  }
  return bits;
}

}  // namespace onebit
