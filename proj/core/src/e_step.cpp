// SPDX-License-Identifier: Apache-2.0
#include "onebit/equalizers/e_step.hpp"

#include <cmath>

#include "onebit/error.hpp"

namespace onebit {

double e_step_real(double r, double z, double noise_variance, MillsRatioFn mills) noexcept {
  const double s = std::sqrt(noise_variance / 2.0);
  return s * r * mills(r * z / s) + z;
}

CVector e_step(const CVector& r, const CVector& z, double noise_variance, MillsRatioFn mills) {
  if (r.size() != z.size()) throw ShapeError("e_step: r and z differ in length");
  if (!(noise_variance > 0.0)) throw ConfigError("e_step: noise variance must be positive");
  const double s = std::sqrt(noise_variance / 2.0);
  const double inv_s = 1.0 / s;
  CVector out(r.size());
  for (Index i = 0; i < r.size(); ++i) {
    const double rr = r[i].real();
    const double ri = r[i].imag();
    const double zr = z[i].real();
    const double zi = z[i].imag();
    const double mr = mills(rr * zr * inv_s);
    const double mi = mills(ri * zi * inv_s);
    out[i] = cd(s * rr * mr + zr, s * ri * mi + zi);
  }
  return out;
}

}  // namespace onebit
