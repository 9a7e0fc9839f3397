// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference constructions built entry by entry from index formulas. Slow and
// dense; meant for checking the fast paths at small sizes.

#include <vector>

#include "onebit/channel/channel_taps.hpp"
#include "onebit/types.hpp"

namespace onebit::oracle {

/// F[k][n] = exp(+j 2 pi k n / N) / sqrt(N).
[[nodiscard]] CMatrix dft_matrix(int n);

/// kron(a, I_size).
[[nodiscard]] CMatrix kron_identity(const CMatrix& a, int size);

/// Dense (F (x) I_S) x or (F^H (x) I_S) x.
[[nodiscard]] CVector naive_block_dft(const CVector& x, int streams, bool inverse);

/// H_f[i] = sum_l H_l exp(-j 2 pi l i / N_b), one term at a time.
[[nodiscard]] std::vector<CMatrix> naive_frequency_response(const ChannelTaps& taps, int block_length);

[[nodiscard]] CMatrix block_diagonal(const std::vector<CMatrix>& blocks);

/// Block (i, i + l) = H_l; M N_b x K (N_b + L).
[[nodiscard]] CMatrix toeplitz_matrix(const ChannelTaps& taps, int block_length);

/// Block (i, (i + l) mod N_b) = H_l; M N_b x K N_b.
[[nodiscard]] CMatrix circulant_matrix(const ChannelTaps& taps, int block_length);

/// H'_in: block (i, j) = H_{j + N_b - i} when that tap exists; M N_b x K N_b.
[[nodiscard]] CMatrix interference_matrix(const ChannelTaps& taps, int block_length);

/// (A^H A + (nv / sv) I)^{-1} A^H y by a full-pivot dense solve.
[[nodiscard]] CVector regularized_solve(const CMatrix& a, const CVector& y, double noise_variance,
                                        double signal_variance);

}  // namespace onebit::oracle
