// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "onebit/types.hpp"

namespace onebit {

/// One processing window. keep_from/keep_to are estimate indices relative to
/// `start` in forward time; [keep_from, keep_to) is what the block reports.
struct BlockWindow {
  Index start = 0;
  Index keep_from = 0;
  Index keep_to = 0;

  friend bool operator==(const BlockWindow&, const BlockWindow&) = default;
};

struct DiscardLengths {
  Index pre = 0;   // ceil(L' / 2), dropped at the start of a block
  Index post = 0;  // floor(L' / 2), dropped at the end
};

[[nodiscard]] DiscardLengths discard_lengths(Index overlap);

/// Overlap-discard windows over a frame of T symbols.
///
/// Windows advance by N_b - L'. Interior windows keep [L_pre, N_b - L_post);
/// the first keeps from 0 and the last keeps through T - 1, its start clamped
/// to T - N_b. Every index 0..T-1 is kept exactly once. Throws ConfigError
/// unless 0 <= L' < N_b <= T.
[[nodiscard]] std::vector<BlockWindow> overlap_discard_schedule(Index frame_length, Index block_length,
                                                                Index overlap);

}  // namespace onebit
