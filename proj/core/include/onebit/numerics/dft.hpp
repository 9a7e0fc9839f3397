// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "onebit/numerics/multiply_counter.hpp"
#include "onebit/types.hpp"

namespace onebit {

enum class DftDirection { forward, inverse };

/// Unitary N_b-point DFT applied to S interleaved streams, i.e. (F (x) I_S)
/// acting on vec{X} for an S x N_b matrix X stored column-major.
///
/// Convention: F[k][n] = exp(+j 2 pi k n / N_b) / sqrt(N_b). Blocks are
/// stored newest-sample-first, so the positive kernel on the block index is
/// the ordinary negative kernel in forward time, and with it
///   H_cir = (F^H (x) I_M) diag(H_f) (F (x) I_K),
///   H_f[i] = sum_l H_l exp(-j 2 pi l i / N_b)
/// holds exactly. The inverse applies F^H.
///
/// Power-of-two lengths use an iterative radix-2 transform; other lengths
/// fall back to a direct O(N_b^2) evaluation. Immutable after construction.
class BlockDft {
 public:
  explicit BlockDft(std::size_t length);

  [[nodiscard]] std::size_t length() const noexcept { return n_; }
  [[nodiscard]] bool is_power_of_two() const noexcept { return log2n_ >= 0; }

  /// In place. data.size() must equal streams * length().
  void transform(std::span<cd> data, std::size_t streams, DftDirection direction,
                 MultiplyCounter* counter = nullptr) const;

  [[nodiscard]] CVector apply(const CVector& x, std::size_t streams, DftDirection direction,
                              MultiplyCounter* counter = nullptr) const;

  /// Accounting convention for transform cost: N_b * log2(N_b) complex
  /// multiplications per stream.
  [[nodiscard]] std::uint64_t nominal_multiplies(std::size_t streams) const noexcept;

 private:
  void radix2(std::span<cd> data, std::size_t streams, bool forward) const;
  void direct(std::span<cd> data, std::size_t streams, bool forward) const;

  std::size_t n_;
  int log2n_ = -1;
  std::vector<cd> twiddles_;          // exp(+j 2 pi k / n), k < n
  std::vector<std::uint32_t> bitrev_;
};

/// Convenience wrapper constructing a transform of length x.size() / streams.
[[nodiscard]] CVector block_dft(const CVector& x, std::size_t streams, DftDirection direction);

}  // namespace onebit
