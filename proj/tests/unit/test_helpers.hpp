// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "onebit/channel/channel_taps.hpp"
#include "onebit/numerics/rng.hpp"
#include "onebit/signal/noise.hpp"

namespace onebit::testing {

inline ChannelTaps random_taps(int m, int k, int l, RngStream& rng) {
  ChannelTaps taps = ChannelTaps::zeros(m, k, l);
  for (auto& h : taps.taps) h = draw_awgn(m, k, 1.0, rng);
  return taps;
}

inline CVector random_vector(Index n, RngStream& rng) { return draw_awgn(n, 1, 1.0, rng).col(0); }

inline int uniform_int(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace onebit::testing
