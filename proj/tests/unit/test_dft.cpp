// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "onebit/error.hpp"
#include "onebit/numerics/dft.hpp"
#include "onebit/oracles/dense_models.hpp"
#include "test_helpers.hpp"

namespace onebit {
namespace {

using testing::random_vector;

TEST(BlockDft, MatchesDenseMatrixForEveryLengthAndStreamCount) {
  RngStream rng(3);
  for (int n : {1, 2, 3, 4, 5, 8, 12, 16, 32}) {
    for (int streams : {1, 2, 3}) {
      const CVector x = random_vector(n * streams, rng);
      for (bool inverse : {false, true}) {
        const CVector want = oracle::naive_block_dft(x, streams, inverse);
        const CVector got = block_dft(x, static_cast<std::size_t>(streams),
                                      inverse ? DftDirection::inverse : DftDirection::forward);
        EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n << " s=" << streams;
      }
    }
  }
}

TEST(BlockDft, UnitaryProperty) {
  RngStream rng(4);
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 << testing::uniform_int(rng, 0, 7);
    const int streams = testing::uniform_int(rng, 1, 4);
    const CVector x = random_vector(n * streams, rng);
    const CVector f = block_dft(x, static_cast<std::size_t>(streams), DftDirection::forward);
    ASSERT_NEAR(f.norm(), x.norm(), 1e-11 * x.norm());
    const CVector back = block_dft(f, static_cast<std::size_t>(streams), DftDirection::inverse);
    ASSERT_LT((back - x).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BlockDft, ImpulseGivesFlatSpectrum) {
  CVector x = CVector::Zero(8);
  x[0] = 1.0;
  const CVector f = block_dft(x, 1, DftDirection::forward);
  for (Index i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(f[i] - cd(1.0 / std::sqrt(8.0), 0.0)), 0.0, 1e-15);
}

TEST(BlockDft, RejectsLengthNotDivisibleByStreams) {
  EXPECT_THROW((void)block_dft(CVector::Zero(7), 2, DftDirection::forward), ShapeError);
}

TEST(BlockDft, CountsNominalMultiplies) {
  const BlockDft dft(16);
  MultiplyCounter counter;
  CVector x = CVector::Ones(48);
  dft.transform(std::span<cd>(x.data(), 48), 3, DftDirection::forward, &counter);
  EXPECT_EQ(counter.count(), 16u * 4u * 3u);
  EXPECT_EQ(dft.nominal_multiplies(3), 16u * 4u * 3u);
}

}  // namespace
}  // namespace onebit
