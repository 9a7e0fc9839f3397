// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace onebit {

/// Tally of complex multiplications. One per worker; merged by summation.
class MultiplyCounter {
 public:
  void add(std::uint64_t n) noexcept { count_ += n; }
  void merge(const MultiplyCounter& other) noexcept { count_ += other.count_; }
  void reset() noexcept { count_ = 0; }
  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_ = 0;
};

/// Adds to `counter` when one is attached.
inline void tally(MultiplyCounter* counter, std::uint64_t n) noexcept {
  if (counter != nullptr) counter->add(n);
}

}  // namespace onebit
