// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace onebit {

/// Per-user symbol variance for a target Eb/N0, with unit per-link channel
/// energy: Eb/N0 = sigma_x^2 K / (B sigma_eta^2), so
/// sigma_x^2 = 10^(dB / 10) B sigma_eta^2 / K.
[[nodiscard]] double eb_n0_to_signal_variance(double eb_n0_db, int users, double noise_variance,
                                              int bits_per_symbol = 4);

}  // namespace onebit
