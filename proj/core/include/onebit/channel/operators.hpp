// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "onebit/channel/channel_taps.hpp"
#include "onebit/numerics/dft.hpp"
#include "onebit/numerics/multiply_counter.hpp"

namespace onebit {

// Block vectors follow the newest-first column order of the space-time
// matrices: block i of vec{Y[n]} is y[n - i]. For the exact model the
// unknowns are vec{X[n]} = [x[n], ..., x[n-N_b+1], x[n-N_b], ..., x[n-N_b-L+1]],
// i.e. K (N_b + L) entries with X_in appended after X_c.

/// Forward-time convolution y[t] = sum_l H_l x[t-l] + noise[t] over a K x T
/// frame. `preceding` (K x L, column j = x[-1-j]) supplies symbols sent
/// before the frame; without it they are zero.
[[nodiscard]] CMatrix apply_channel(const ChannelTaps& taps, const CMatrix& symbols,
                                    const CMatrix& noise, const CMatrix* preceding = nullptr);

/// Block-Toeplitz product H xi for xi of length K (N_b + L). Tap-wise
/// accumulation; the matrix is never formed.
[[nodiscard]] CVector toeplitz_apply(const ChannelTaps& taps, const CVector& xi, int block_length);

/// Materializes the block-Toeplitz matrix (M N_b x K (N_b + L)) for the dense
/// time-domain solvers.
[[nodiscard]] CMatrix dense_toeplitz(const ChannelTaps& taps, int block_length);

/// Interference that separates the exact model from the circulant one:
/// H'_in ([vec X_in; 0] - vec X_c). Only the last M L entries can be nonzero.
[[nodiscard]] CVector interference_term(const ChannelTaps& taps, const CMatrix& x_in,
                                        const CMatrix& x_c);

/// Block-circulant channel H_cir, applied through the block DFT and the
/// per-bin responses. Requires N_b > L. Immutable; safe to share.
class CirculantOperator {
 public:
  CirculantOperator(const ChannelTaps& taps, int block_length);

  [[nodiscard]] int block_length() const noexcept { return block_length_; }
  [[nodiscard]] int antennas() const noexcept { return antennas_; }
  [[nodiscard]] int users() const noexcept { return users_; }
  [[nodiscard]] const FrequencyResponse& response() const noexcept { return response_; }
  [[nodiscard]] const BlockDft& dft() const noexcept { return dft_; }

  /// H_cir xi, xi of length K N_b.
  [[nodiscard]] CVector apply(const CVector& xi, MultiplyCounter* counter = nullptr) const;
  /// H_cir^H y, y of length M N_b.
  [[nodiscard]] CVector adjoint(const CVector& y, MultiplyCounter* counter = nullptr) const;

 private:
  int block_length_;
  int antennas_;
  int users_;
  BlockDft dft_;
  FrequencyResponse response_;
};

[[nodiscard]] CVector circulant_apply(const ChannelTaps& taps, const CVector& xi_c, int block_length);
[[nodiscard]] CVector adjoint_circulant_apply(const ChannelTaps& taps, const CVector& y,
                                              int block_length);

/// Per-bin products out_i = W_i in_i for stacked bins, with W_i of size
/// rows x cols. Adds rows * cols multiplies per bin to `counter`.
void apply_per_bin(const std::vector<CMatrix>& bins, const cd* in, cd* out,
                   MultiplyCounter* counter = nullptr);

}  // namespace onebit
