// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <bitset>
#include <cmath>

#include "onebit/error.hpp"
#include "onebit/signal/constellation.hpp"
#include "onebit/signal/noise.hpp"
#include "onebit/signal/quantizer.hpp"

namespace onebit {
namespace {

TEST(Quantizer, SignOfZeroIsNegative) {
  EXPECT_EQ(quantize_1bit(cd(0.0, 0.0)), cd(-1.0, -1.0));
  EXPECT_EQ(quantize_1bit(cd(-0.0, 1e-300)), cd(-1.0, 1.0));
  EXPECT_EQ(quantize_1bit(cd(2.5, -3.0)), cd(1.0, -1.0));
}

TEST(Quantizer, AlphabetProperty) {
  RngStream rng(21);
  for (int i = 0; i < 1000; ++i) {
    CMatrix y = draw_awgn(3, 4, 1.0 + 10.0 * rng.uniform(), rng);
    // Sprinkle exact zeros and extreme magnitudes.
    y(rng.next_u64() % 3, rng.next_u64() % 4) = 0.0;
    y(rng.next_u64() % 3, rng.next_u64() % 4) = cd(1e300, -1e-300);
    const CMatrix r = quantize_1bit(y);
    ASSERT_TRUE(is_quantized(r));
    for (Index j = 0; j < r.size(); ++j) {
      ASSERT_EQ(r(j).real(), y(j).real() > 0.0 ? 1.0 : -1.0);
      ASSERT_EQ(r(j).imag(), y(j).imag() > 0.0 ? 1.0 : -1.0);
    }
  }
  CMatrix not_q(1, 1);
  not_q << cd(1.0, 0.5);
  EXPECT_FALSE(is_quantized(not_q));
}

TEST(Qam16, GrayLevels) {
  EXPECT_EQ(Qam16::gray_level(0b00), -3);
  EXPECT_EQ(Qam16::gray_level(0b01), -1);
  EXPECT_EQ(Qam16::gray_level(0b11), 1);
  EXPECT_EQ(Qam16::gray_level(0b10), 3);
}

TEST(Qam16, LabelZeroIsCorner) {
  const Qam16 qam;
  EXPECT_EQ(qam.point(0), cd(-3.0, -3.0));
  EXPECT_EQ(qam.point(0b1010), cd(3.0, 3.0));
}

TEST(Qam16, AverageEnergy) {
  for (double e : {1.0, 10.0, 2.5}) {
    const Qam16 qam(e);
    double sum = 0.0;
    for (const cd& p : qam.points()) sum += std::norm(p);
    EXPECT_NEAR(sum / 16.0, e, 1e-12);
  }
}

TEST(Qam16, GrayPropertyForNeighbours) {
  const Qam16 qam;
  int pairs = 0;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const cd d = qam.point(static_cast<std::uint8_t>(a)) - qam.point(static_cast<std::uint8_t>(b));
      const bool adjacent = std::abs(std::abs(d) - 2.0) < 1e-12 &&
                            (std::abs(d.real()) < 1e-12 || std::abs(d.imag()) < 1e-12);
      if (adjacent) {
        ++pairs;
        EXPECT_EQ(std::bitset<4>(static_cast<unsigned>(a ^ b)).count(), 1u) << a << " " << b;
      }
    }
  }
  EXPECT_EQ(pairs, 48);  // 24 undirected neighbour pairs
}

TEST(Qam16, GrayPropertyRandomized) {
  const Qam16 qam(1.0);
  RngStream rng(22);
  for (int i = 0; i < 1000; ++i) {
    const auto label = static_cast<std::uint8_t>(rng.next_u64() % 16);
    const cd p = qam.point(label);
    const double step = 2.0 * qam.scale();
    const cd moves[] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
    const cd q = p + moves[rng.next_u64() % 4];
    if (std::abs(q.real()) > 3.0 * qam.scale() + 1e-12 || std::abs(q.imag()) > 3.0 * qam.scale() + 1e-12) continue;
    const std::uint8_t neighbour = qam.decide(q);
    ASSERT_EQ(std::bitset<4>(static_cast<unsigned>(label ^ neighbour)).count(), 1u);
  }
}

TEST(Qam16, ModulateDemodulateInverse) {
  RngStream rng(23);
  for (int i = 0; i < 1000; ++i) {
    const BitMatrix bits = draw_bits(1 + static_cast<Index>(rng.next_u64() % 3),
                                     4 * (1 + static_cast<Index>(rng.next_u64() % 6)), rng);
    const Qam16 qam(0.5 + 20.0 * rng.uniform());
    const SymbolFrame frame = qam.modulate(bits);
    ASSERT_EQ(frame.symbols.cols() * 4, bits.cols());
    ASSERT_EQ(qam.demodulate_hard(frame.symbols), bits);
  }
}

TEST(Qam16, DecisionTiesGoToSmallerLabel) {
  const Qam16 qam;
  // Between -3 (00) and -1 (01) on the in-phase rail.
  EXPECT_EQ(qam.decide(cd(-2.0, -3.0)), qam.decide(cd(-3.0, -3.0)));
  // Between -1 (01) and +1 (11).
  EXPECT_EQ(qam.decide(cd(0.0, -3.0)), qam.decide(cd(-1.0, -3.0)));
  // Between +1 (11) and +3 (10): 10 is smaller.
  EXPECT_EQ(qam.decide(cd(2.0, -3.0)), qam.decide(cd(3.0, -3.0)));
}

TEST(Qam16, FarPointsClampToCorners) {
  const Qam16 qam;
  EXPECT_EQ(qam.point(qam.decide(cd(100.0, -100.0))), cd(3.0, -3.0));
}

TEST(Qam16, RejectsBitCountNotMultipleOfFour) {
  const Qam16 qam;
  EXPECT_THROW((void)qam.modulate(BitMatrix::Zero(1, 6)), ShapeError);
}

}  // namespace
}  // namespace onebit
