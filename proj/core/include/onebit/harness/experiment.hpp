// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onebit/harness/config.hpp"

namespace onebit {

/// One row of a BER curve.
struct BerPoint {
  std::string equalizer;
  double eb_n0_db = 0.0;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  double ber = 0.0;
  double mean_iterations = 0.0;   ///< per block; 0 for linear equalizers
  std::uint64_t multiplies = 0;

  friend bool operator==(const BerPoint&, const BerPoint&) = default;
};

struct RunOptions {
  int workers = 1;
  MillsRatioFn mills = mills_ratio;
};

/// Monte-Carlo BER over realizations x Eb/N0 grid x equalizers.
///
/// Realization v draws its taps, bits and unit-variance noise from
/// RngStream(seed).split(v); every Eb/N0 point and equalizer reuses them
/// (paired comparison). Errors are counted over kept symbols only. Results
/// do not depend on `workers`. Throws ConfigError when validation fails.
[[nodiscard]] std::vector<BerPoint> run_ber_sweep(const ExperimentConfig& cfg,
                                                  const RunOptions& options = {});

/// run_ber_sweep with early stopping disabled for every EM equalizer, once
/// per I_max in cfg.fixed_iterations. Rows are labelled "<label>@I=<I_max>".
[[nodiscard]] std::vector<BerPoint> run_fixed_iteration_study(const ExperimentConfig& cfg,
                                                              const RunOptions& options = {});

/// Config used by run_fixed_iteration_study.
[[nodiscard]] ExperimentConfig fixed_iteration_config(const ExperimentConfig& cfg);

}  // namespace onebit
