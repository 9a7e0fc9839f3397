// SPDX-License-Identifier: Apache-2.0
#include "onebit/equalizers/schedule.hpp"

#include <algorithm>
#include <string>

#include "onebit/error.hpp"

namespace onebit {

DiscardLengths discard_lengths(Index overlap) { return {(overlap + 1) / 2, overlap / 2}; }

std::vector<BlockWindow> overlap_discard_schedule(Index frame_length, Index block_length,
                                                  Index overlap) {
  if (block_length < 1) throw ConfigError("block length must be positive");
  if (overlap < 0 || overlap >= block_length) {
    throw ConfigError("overlap L' = " + std::to_string(overlap) + " must satisfy 0 <= L' < N_b = " +
                      std::to_string(block_length));
  }
  if (frame_length < block_length) {
    throw ConfigError("frame of " + std::to_string(frame_length) +
                      " symbols is shorter than one block of " + std::to_string(block_length));
  }
  const Index stride = block_length - overlap;
  const auto [pre, post] = discard_lengths(overlap);
  (void)pre;

  std::vector<BlockWindow> windows;
  Index start = 0;
  Index kept_until = 0;  // absolute time of the first index not yet reported
  while (true) {
    const bool last = start + block_length >= frame_length;
    const Index keep_to_abs = last ? frame_length : start + block_length - post;
    windows.push_back({start, kept_until - start, keep_to_abs - start});
    kept_until = keep_to_abs;
    if (last) break;
    start = std::min(start + stride, frame_length - block_length);
  }
  return windows;
}

}  // namespace onebit
