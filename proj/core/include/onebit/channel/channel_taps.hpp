// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "onebit/numerics/rng.hpp"
#include "onebit/types.hpp"

namespace onebit {

/// Multipath MIMO impulse response: L+1 matrices H_0..H_L of size M x K.
struct ChannelTaps {
  int antennas = 0;  // M
  int users = 0;     // K
  int memory = 0;    // L
  std::vector<CMatrix> taps;

  [[nodiscard]] static ChannelTaps zeros(int antennas, int users, int memory);
  [[nodiscard]] const CMatrix& operator[](int l) const { return taps[static_cast<std::size_t>(l)]; }

  /// Throws ShapeError if the tap list does not match the dimensions.
  void validate() const;
};

/// Per-bin frequency response H_f[i] = sum_l H_l exp(-j 2 pi l i / N_b).
struct FrequencyResponse {
  std::vector<CMatrix> bins;
};

/// Tapped-delay-line power profile (delays in ns, relative powers in dB).
struct PowerDelayProfile {
  std::vector<double> delays_ns;
  std::vector<double> powers_db;

  /// 3GPP Extended Vehicular A: 9 taps spanning 2510 ns.
  [[nodiscard]] static PowerDelayProfile extended_vehicular_a();
  [[nodiscard]] double max_delay_ns() const;
};

/// Sample period that stretches the profile so its last delay lands on tap L.
/// Throws ConfigError when L = 0 and the profile has nonzero delay spread.
[[nodiscard]] double stretched_sample_period_ns(const PowerDelayProfile& pdp, int memory);

/// Normalized per-index tap powers (sum 1) for the given sampling. Delays are
/// rounded to the nearest sample index; collisions add their powers.
/// Throws ConfigError if any delay maps beyond index L.
[[nodiscard]] std::vector<double> sampled_tap_powers(const PowerDelayProfile& pdp, int memory,
                                                     double sample_period_ns);

/// Independent Rayleigh taps per link with the sampled profile as variances,
/// so sum_l E|h_mk[l]|^2 = 1 for every link.
[[nodiscard]] ChannelTaps generate_taps(int antennas, int users, int memory,
                                        const PowerDelayProfile& pdp, double sample_period_ns,
                                        RngStream& rng);

/// EVA realization; the default sample period stretches EVA across L.
[[nodiscard]] ChannelTaps generate_eva_taps(int antennas, int users, int memory,
                                            std::optional<double> sample_period_ns,
                                            RngStream& rng);

[[nodiscard]] FrequencyResponse frequency_response(const ChannelTaps& taps, int block_length);

/// {M, K, L, taps: [[[re, im], ...] per tap, row-major within each tap]}.
[[nodiscard]] nlohmann::json channel_to_json(const ChannelTaps& taps);
[[nodiscard]] ChannelTaps channel_from_json(const nlohmann::json& doc);

}  // namespace onebit
