// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "onebit/equalizers/e_step.hpp"
#include "onebit/oracles/quadrature.hpp"
#include "onebit/signal/quantizer.hpp"
#include "test_helpers.hpp"

namespace onebit {
namespace {

double broken_mills(double w) { return 1.01 * mills_ratio(w); }

TEST(EStep, HalfNormalMeanAtZero) {
  const CVector r = CVector::Constant(1, cd(1.0, 1.0));
  const CVector y = e_step(r, CVector::Zero(1), 2.0);
  EXPECT_NEAR(y(0).real(), 0.7978845608, 1e-10);
  EXPECT_NEAR(y(0).imag(), 0.7978845608, 1e-10);
}

TEST(EStep, CorrectionVanishesDeepInsideCell) {
  const double nv = 0.7;
  const double z = 20.0 * std::sqrt(nv);
  const CVector y = e_step(CVector::Constant(1, cd(1.0, -1.0)), CVector::Constant(1, cd(z, -z)), nv);
  EXPECT_NEAR(y(0).real(), z, 1e-12);
  EXPECT_NEAR(y(0).imag(), -z, 1e-12);
}

TEST(EStep, SignFlipSymmetry) {
  EXPECT_DOUBLE_EQ(e_step_real(-1.0, 0.3, 1.0), -e_step_real(1.0, -0.3, 1.0));
}

TEST(EStep, FiniteAndInCellForExtremeMeans) {
  for (double z : {-1e6, -300.0, -30.0, 0.0, 30.0, 300.0, 1e6}) {
    for (double r : {-1.0, 1.0}) {
      const double y = e_step_real(r, z, 1e-4);
      ASSERT_TRUE(std::isfinite(y)) << z;
      EXPECT_GT(r * y, 0.0) << "r=" << r << " z=" << z;
    }
  }
}

TEST(EStep, MatchesQuadrature) {
  RngStream rng(31);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double nv = std::exp(rng.uniform() * 6.0 - 3.0);
    const double s = std::sqrt(nv);
    // Means up to 30 standard deviations on either side.
    const cd z{(2.0 * rng.uniform() - 1.0) * 30.0 * s, (2.0 * rng.uniform() - 1.0) * 30.0 * s};
    const cd r = quantize_1bit(cd{rng.normal(), rng.normal()});
    const cd got = e_step(CVector::Constant(1, r), CVector::Constant(1, z), nv)(0);
    const cd want = oracle::conditional_mean_quadrature(r, z, nv);
    worst = std::max(worst, std::abs(got - want));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(EStep, FaultInjectedMillsIsDetected) {
  const cd r{1.0, -1.0};
  const cd z{0.2, 0.4};
  const cd got = e_step(CVector::Constant(1, r), CVector::Constant(1, z), 1.0, broken_mills)(0);
  EXPECT_GT(std::abs(got - oracle::conditional_mean_quadrature(r, z, 1.0)), 1e-4);
}

}  // namespace
}  // namespace onebit
