// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace onebit {

struct ComplexityInputs {
  int users = 2;            // K
  int antennas = 32;        // M
  int memory = 127;         // L
  int block_length = 1024;  // N_b
  int overlap = 254;        // L'
  std::uint64_t frame_length = 50000;  // T_c
  /// EM iterations for every block.
  std::uint64_t iterations = 8;
};

/// Complex-multiplication counts over one coherence interval.
///
/// Block counts are rounded up, B = ceil(T_c / N_b) and
/// B' = ceil(T_c / (N_b - L')), since a partial block still costs a full one.
struct ComplexityReport {
  std::uint64_t p_exact = 0;         // K (N_b + L)
  std::uint64_t p_mismatched = 0;    // K N_b
  std::uint64_t blocks = 0;          // B
  std::uint64_t blocks_overlap = 0;  // B'
  // Time domain, exact model.
  std::uint64_t t_g = 0;             // P^3 + P^2 M N_b
  std::uint64_t t_em_block = 0;      // M N_b (P + 1) + P M N_b
  std::uint64_t t_tot = 0;           // B I t_em_block + t_g
  // Frequency domain, block-circulant model.
  std::uint64_t t_gf = 0;            // (K M log2 N_b + 2 K^2 M + K^3) N_b
  std::uint64_t t_em_block_f = 0;    // 2 ((M + K) log2 N_b + K M) N_b
  std::uint64_t t_tot_f = 0;         // B' I t_em_block_f + t_gf
};

/// Throws ConfigError on inconsistent dimensions (N_b not a power of two,
/// L' >= N_b, nonpositive sizes) and std::overflow_error if a count exceeds
/// 64 bits.
[[nodiscard]] ComplexityReport complexity_report(const ComplexityInputs& in);

/// Time-domain totals for an arbitrary P and per-block iteration counts.
[[nodiscard]] std::uint64_t time_domain_total(std::uint64_t p, int antennas, int block_length,
                                              const std::vector<std::uint64_t>& iterations);

}  // namespace onebit
