// SPDX-License-Identifier: Apache-2.0
#include "onebit/numerics/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace onebit {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2 pi)
constexpr double kTailSwitch = -8.0;

// t + 1/(t + 2/(t + 3/(t + ...))) = phi(t) / Phi(-t), modified Lentz.
double upper_tail_inverse_mills(double t) noexcept {
  constexpr double kTiny = 1e-300;
  double f = t;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 500; ++n) {
    const double a = static_cast<double>(n);
    d = t + a * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = t + a / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

}  // namespace

double std_normal_pdf(double x) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double mills_ratio(double w) noexcept {
  if (w >= kTailSwitch) return std_normal_pdf(w) / std_normal_cdf(w);
  return upper_tail_inverse_mills(-w);
}

}  // namespace onebit
