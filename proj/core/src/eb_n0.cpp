// SPDX-License-Identifier: Apache-2.0
#include "onebit/harness/eb_n0.hpp"

#include <cmath>

#include "onebit/error.hpp"

namespace onebit {

double eb_n0_to_signal_variance(double eb_n0_db, int users, double noise_variance,
                                int bits_per_symbol) {
  if (users < 1 || bits_per_symbol < 1 || !(noise_variance > 0.0)) {
    throw ConfigError("eb_n0_to_signal_variance: inputs must be positive");
  }
  return std::pow(10.0, eb_n0_db / 10.0) * bits_per_symbol * noise_variance / users;
}

}  // namespace onebit
