// SPDX-License-Identifier: Apache-2.0
#include "onebit/oracles/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace onebit::oracle {

double truncated_gaussian_mean(double lo, double hi, double z, double noise_variance) {
  using boost::math::quadrature::gauss_kronrod;
  const double s = std::sqrt(noise_variance / 2.0);
  // Standardized bounds, clipped to the region that holds the mass.
  constexpr double kWindow = 40.0;
  double a = std::isinf(lo) ? -std::numeric_limits<double>::infinity() : (lo - z) / s;
  double b = std::isinf(hi) ? std::numeric_limits<double>::infinity() : (hi - z) / s;
  const double anchor = std::clamp(0.0, a, b);  // point of the interval closest to the mode
  a = std::max(a, anchor - kWindow);
  b = std::min(b, anchor + kWindow);

  // exp(-(u^2 - anchor^2) / 2) keeps the peak at 1 however far out it sits.
  const double shift = anchor * anchor / 2.0;
  auto density = [&](double u) { return std::exp(shift - u * u / 2.0); };
  auto moment = [&](double u) { return (u - anchor) * std::exp(shift - u * u / 2.0); };
  constexpr unsigned kDepth = 20;
  constexpr double kTol = 1e-13;
  const double mass = gauss_kronrod<double, 61>::integrate(density, a, b, kDepth, kTol);
  const double first = gauss_kronrod<double, 61>::integrate(moment, a, b, kDepth, kTol);
  return z + s * (anchor + first / mass);
}

cd conditional_mean_quadrature(cd r, cd z, double noise_variance) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto cell_mean = [&](double sign, double centre) {
    return sign > 0.0 ? truncated_gaussian_mean(0.0, inf, centre, noise_variance)
                      : truncated_gaussian_mean(-inf, 0.0, centre, noise_variance);
  };
  return {cell_mean(r.real(), z.real()), cell_mean(r.imag(), z.imag())};
}

}  // namespace onebit::oracle
