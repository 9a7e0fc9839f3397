// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace onebit {

/// Seedable, splittable random stream.
///
/// Every stream is identified by a 64-bit key; split(i) derives the key of
/// child i by mixing, so the numbers drawn for a given (seed, path) do not
/// depend on which worker draws them or in which order work items run.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key);

  [[nodiscard]] RngStream split(std::uint64_t index) const;
  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace onebit
