// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

#include "onebit/types.hpp"

namespace onebit {

/// Transmit symbols of one frame together with the bits they carry.
struct SymbolFrame {
  CMatrix symbols;    ///< K x T
  BitMatrix bits;     ///< K x (4 T), four bits per symbol, MSB first
};

/// Gray-mapped 16-QAM on the grid {-3,-1,+1,+3}^2, scaled to a given
/// average symbol energy.
///
/// A label is b0 b1 b2 b3 (b0 most significant): b0 b1 select the in-phase
/// level and b2 b3 the quadrature level, each through the 2-bit Gray code
/// 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
class Qam16 {
 public:
  static constexpr int kBitsPerSymbol = 4;
  static constexpr int kOrder = 16;

  explicit Qam16(double symbol_energy = 10.0);

  [[nodiscard]] double symbol_energy() const noexcept { return energy_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }

  /// Constellation point for label 0..15.
  [[nodiscard]] cd point(std::uint8_t label) const noexcept { return points_[label]; }
  [[nodiscard]] const std::array<cd, kOrder>& points() const noexcept { return points_; }

  /// Nearest point; on exact ties the smaller label wins.
  [[nodiscard]] std::uint8_t decide(cd estimate) const noexcept;

  /// bits: K x (4 T). Throws ShapeError when the column count is not a
  /// multiple of four.
  [[nodiscard]] SymbolFrame modulate(const BitMatrix& bits) const;

  /// Hard decisions, K x T estimates -> K x (4 T) bits.
  [[nodiscard]] BitMatrix demodulate_hard(const CMatrix& estimates) const;

  static int gray_level(int two_bits) noexcept;

 private:
  double energy_;
  double scale_;
  std::array<cd, kOrder> points_{};
};

}  // namespace onebit
