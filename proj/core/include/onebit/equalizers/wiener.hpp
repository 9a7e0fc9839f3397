// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "onebit/channel/operators.hpp"

namespace onebit {

/// Linear frequency-domain equalizer: x = (F^H (x) I_K) diag(W_i) (F (x) I_M) r
/// with one K x M filter per bin. Immutable once built.
class LinearFde {
 public:
  LinearFde(std::shared_ptr<const CirculantOperator> op, std::vector<CMatrix> filters,
            bool diagonal_loading = false);

  [[nodiscard]] CVector apply(const CVector& r, MultiplyCounter* counter = nullptr) const;

  [[nodiscard]] const std::vector<CMatrix>& filters() const noexcept { return filters_; }
  [[nodiscard]] const CirculantOperator& op() const noexcept { return *op_; }
  [[nodiscard]] bool diagonal_loading() const noexcept { return diagonal_loading_; }

 private:
  std::shared_ptr<const CirculantOperator> op_;
  std::vector<CMatrix> filters_;
  bool diagonal_loading_;
};

/// Per-bin regularized least squares W_i = (H_i^H H_i + (nv / sv) I_K)^{-1} H_i^H.
/// Used both as the quantization-blind Wiener filter and as the frequency-
/// domain M-step. Adds the static cost (K M log2 N_b + 2 K^2 M + K^3) N_b
/// (tap transform included) to `counter`.
[[nodiscard]] LinearFde make_unquantized_fde(std::shared_ptr<const CirculantOperator> op,
                                             double noise_variance, double signal_variance,
                                             MultiplyCounter* counter = nullptr);

/// Bussgang / arcsine-law Wiener filter under the block-circulant model.
///
/// C_y = sv H_cir H_cir^H + nv I is block-circulant; its first block row is
/// recovered from the per-bin spectra, mapped through the arcsine law to the
/// covariance of the normalized quantized output, and transformed back to
/// per-bin M x M blocks C_r,i. Then
///   W_i = sv H_i^H A_B C_r,i^{-1} / sqrt(2),  A_B = sqrt(2 / pi) D^{-1/2},
/// where the 1/sqrt(2) normalizes +-1 +-j observations to unit power. A bin
/// whose C_r,i fails to factor gets diagonal loading 1e-10 trace / M.
[[nodiscard]] LinearFde make_quantized_fde(std::shared_ptr<const CirculantOperator> op,
                                           double noise_variance, double signal_variance);

/// Quantization-blind regularized least squares on the exact block-Toeplitz
/// model (dense). Returns K (N_b + L) entries.
[[nodiscard]] CVector wf_unquantized_exact(const ChannelTaps& taps, const CVector& r,
                                           int block_length, double noise_variance,
                                           double signal_variance);

/// Convenience: per-bin quantization-blind filter built and applied once.
[[nodiscard]] CVector wf_unquantized_circulant(const ChannelTaps& taps, const CVector& r,
                                               int block_length, double noise_variance,
                                               double signal_variance);

struct DenseWienerResult {
  CVector estimate;
  bool diagonal_loading = false;
};

/// Dense Bussgang filter matrix W = sv A^H A_B C_r^{-1} / sqrt(2) for an
/// arbitrary model matrix A (rows = observations); x = W r. Sets `loaded`
/// when C_r needed diagonal loading.
[[nodiscard]] CMatrix quantized_wiener_matrix(const CMatrix& a, double noise_variance,
                                              double signal_variance, bool* loaded = nullptr);

/// Bussgang Wiener filter with the full covariance of an arbitrary dense
/// model matrix A (rows = observations).
[[nodiscard]] DenseWienerResult wf_quantized_dense(const CMatrix& a, const CVector& r,
                                                   double noise_variance, double signal_variance);

/// wf_quantized_dense on the exact block-Toeplitz model.
[[nodiscard]] DenseWienerResult wf_quantized_exact(const ChannelTaps& taps, const CVector& r,
                                                   int block_length, double noise_variance,
                                                   double signal_variance);

/// Convenience: per-bin quantized filter built and applied once.
[[nodiscard]] CVector wf_quantized_circulant(const ChannelTaps& taps, const CVector& r,
                                             int block_length, double noise_variance,
                                             double signal_variance);

}  // namespace onebit
