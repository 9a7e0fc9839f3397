// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "onebit/types.hpp"

namespace onebit {

/// vec{R[n]} for the window covering forward times [start, start + N_b):
/// block i holds column start + N_b - 1 - i of `samples` (newest first).
[[nodiscard]] CVector stack_block(const CMatrix& samples, Index start, int block_length);

/// vec{X[n]} = [vec X_c; vec X_in] for the same window. Symbols before time 0
/// are taken as zero.
[[nodiscard]] CVector stack_exact_symbols(const CMatrix& symbols, Index start, int block_length,
                                          int memory);

/// First K N_b entries of a stacked estimate as a K x N_b matrix in forward
/// time (column t is time start + t).
[[nodiscard]] CMatrix unstack_block(const CVector& xi, int users, int block_length);

}  // namespace onebit
