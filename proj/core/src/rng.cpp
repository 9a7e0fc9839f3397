// SPDX-License-Identifier: Apache-2.0
#include "onebit/numerics/rng.hpp"

namespace onebit {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t key) : key_(key), engine_(mix64(key)) {}

RngStream RngStream::split(std::uint64_t index) const {
  return RngStream(mix64(key_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace onebit
