// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onebit/equalizers/em.hpp"

namespace onebit {

enum class EqualizerKind {
  wf_e,   ///< quantization-blind Wiener filter, exact model (dense)
  wf_m,   ///< quantization-blind Wiener filter, block-circulant model
  wf_eq,  ///< Bussgang Wiener filter, exact model (dense)
  wf_mq,  ///< Bussgang Wiener filter, block-circulant model
  em_e,   ///< EM, exact model, time domain (dense)
  em_m,   ///< EM, block-circulant model, frequency domain
};

/// "WF_E", "WF_M", "WF_EQ", "WF_MQ", "EM_E", "EM_M".
[[nodiscard]] std::string to_string(EqualizerKind kind);
[[nodiscard]] std::optional<EqualizerKind> parse_equalizer_kind(const std::string& name);
[[nodiscard]] bool is_em(EqualizerKind kind) noexcept;
[[nodiscard]] bool uses_exact_model(EqualizerKind kind) noexcept;
[[nodiscard]] bool needs_quantized_input(EqualizerKind kind) noexcept;

[[nodiscard]] std::string to_string(Initializer init);
[[nodiscard]] std::optional<Initializer> parse_initializer(const std::string& name);

struct SystemConfig {
  int users = 2;                  // K
  int antennas = 32;              // M
  int channel_memory = 127;       // L
  Index frame_length = 10000;     // T_c
  double noise_variance = 1.0;    // sigma_eta^2
  /// EVA sampling; unset stretches the profile over L.
  std::optional<double> sample_period_ns;
  /// false bypasses the 1-bit quantizer (linear receivers only).
  bool quantize = true;
  /// Omits the additive noise while keeping noise_variance as regularizer.
  bool noiseless = false;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct EqualizerSpec {
  std::string label;              ///< CSV name; defaults to the kind name
  EqualizerKind kind = EqualizerKind::em_m;
  int block_length = 1024;        // N_b
  int overlap = 254;              // L'
  EmPolicy policy;                ///< EM only

  friend bool operator==(const EqualizerSpec& a, const EqualizerSpec& b) {
    return a.label == b.label && a.kind == b.kind && a.block_length == b.block_length &&
           a.overlap == b.overlap && a.policy.max_iterations == b.policy.max_iterations &&
           a.policy.rel_tolerance == b.policy.rel_tolerance &&
           a.policy.initializer == b.policy.initializer && a.policy.early_stop == b.policy.early_stop;
  }
};

struct ComplexityGrid {
  std::vector<int> block_lengths{256, 512, 1024, 2048};
  int iterations = 8;
  /// Unset uses L' = 2 L.
  std::optional<int> overlap;

  friend bool operator==(const ComplexityGrid&, const ComplexityGrid&) = default;
};

struct ExperimentConfig {
  SystemConfig system;
  std::vector<EqualizerSpec> equalizers;
  int realizations = 20;          // N_sim
  std::vector<double> eb_n0_db;
  std::uint64_t seed = 1;
  std::vector<int> fixed_iterations{1, 2, 4, 8};
  ComplexityGrid complexity;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ValidationIssue {
  std::string field;
  std::string message;
};

/// Upper bound on entries of any dense matrix the exact-model equalizers form.
inline constexpr double kMaxDenseEntries = 16.0 * 1024 * 1024;

/// Every violated constraint, each naming the offending field
/// (e.g. "equalizers[0].block_length"). Empty means valid.
[[nodiscard]] std::vector<ValidationIssue> validate(const ExperimentConfig& cfg);

}  // namespace onebit
