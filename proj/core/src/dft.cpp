// SPDX-License-Identifier: Apache-2.0
#include "onebit/numerics/dft.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "onebit/error.hpp"

namespace onebit {
namespace {

int exact_log2(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) return -1;
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace

BlockDft::BlockDft(std::size_t length) : n_(length), log2n_(exact_log2(length)) {
  if (length == 0) throw ShapeError("BlockDft: length must be positive");
  twiddles_.resize(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
    twiddles_[k] = cd(std::cos(angle), std::sin(angle));
  }
  if (log2n_ >= 0) {
    bitrev_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint32_t r = 0;
      for (int b = 0; b < log2n_; ++b) r |= ((i >> b) & 1U) << (log2n_ - 1 - b);
      bitrev_[i] = r;
    }
  }
}

std::uint64_t BlockDft::nominal_multiplies(std::size_t streams) const noexcept {
  const auto log2 = static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(n_))));
  return static_cast<std::uint64_t>(n_) * log2 * streams;
}

void BlockDft::transform(std::span<cd> data, std::size_t streams, DftDirection direction,
                         MultiplyCounter* counter) const {
  if (streams == 0 || data.size() != streams * n_) {
    throw ShapeError("BlockDft: data length " + std::to_string(data.size()) + " is not " +
                     std::to_string(streams) + " x " + std::to_string(n_));
  }
  tally(counter, nominal_multiplies(streams));
  if (n_ == 1) return;
  const bool forward = direction == DftDirection::forward;
  if (log2n_ >= 0) {
    radix2(data, streams, forward);
  } else {
    direct(data, streams, forward);
  }
}

CVector BlockDft::apply(const CVector& x, std::size_t streams, DftDirection direction,
                        MultiplyCounter* counter) const {
  CVector out = x;
  transform(std::span<cd>(out.data(), static_cast<std::size_t>(out.size())), streams, direction,
            counter);
  return out;
}

// Rows of S interleaved samples are the butterfly operands, so the inner loop
// runs over contiguous memory.
void BlockDft::radix2(std::span<cd> data, std::size_t streams, bool forward) const {
  const std::size_t s = streams;
  cd* base = data.data();
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bitrev_[i];
    if (j > i) {
      for (std::size_t c = 0; c < s; ++c) std::swap(base[i * s + c], base[j * s + c]);
    }
  }
  auto* raw = reinterpret_cast<double*>(base);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cd w = twiddles_[k * step];
        const double wr = w.real();
        const double wi = forward ? w.imag() : -w.imag();
        double* top = raw + 2 * (start + k) * s;
        double* bot = raw + 2 * (start + k + half) * s;
        for (std::size_t c = 0; c < s; ++c) {
          const double br = bot[2 * c];
          const double bi = bot[2 * c + 1];
          const double vr = br * wr - bi * wi;
          const double vi = br * wi + bi * wr;
          const double ur = top[2 * c];
          const double ui = top[2 * c + 1];
          top[2 * c] = ur + vr;
          top[2 * c + 1] = ui + vi;
          bot[2 * c] = ur - vr;
          bot[2 * c + 1] = ui - vi;
        }
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (std::size_t i = 0; i < 2 * n_ * s; ++i) raw[i] *= scale;
}

void BlockDft::direct(std::span<cd> data, std::size_t streams, bool forward) const {
  std::vector<cd> out(data.size(), cd(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (std::size_t k = 0; k < n_; ++k) {
    for (std::size_t n = 0; n < n_; ++n) {
      const cd w = twiddles_[(k * n) % n_];
      const cd wk = forward ? w : std::conj(w);
      for (std::size_t c = 0; c < streams; ++c) out[k * streams + c] += wk * data[n * streams + c];
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) data[i] = out[i] * scale;
}

CVector block_dft(const CVector& x, std::size_t streams, DftDirection direction) {
  if (streams == 0 || x.size() == 0 || static_cast<std::size_t>(x.size()) % streams != 0) {
    throw ShapeError("block_dft: length " + std::to_string(x.size()) +
                     " not divisible by stream count " + std::to_string(streams));
  }
  const BlockDft plan(static_cast<std::size_t>(x.size()) / streams);
  return plan.apply(x, streams, direction);
}

}  // namespace onebit
