// SPDX-License-Identifier: Apache-2.0
#include "onebit/channel/operators.hpp"

#include <algorithm>
#include <string>

#include "onebit/error.hpp"

namespace onebit {

CMatrix apply_channel(const ChannelTaps& taps, const CMatrix& symbols, const CMatrix& noise,
                      const CMatrix* preceding) {
  taps.validate();
  const Index frame = symbols.cols();
  if (symbols.rows() != taps.users || noise.rows() != taps.antennas || noise.cols() != frame ||
      frame < 1) {
    throw ShapeError("apply_channel: expected K x T symbols and M x T noise");
  }
  if (preceding != nullptr && (preceding->rows() != taps.users || preceding->cols() != taps.memory)) {
    throw ShapeError("apply_channel: preceding symbols must be K x L");
  }
  CMatrix out = noise;
  for (int l = 0; l <= taps.memory; ++l) {
    const CMatrix& h = taps[l];
    if (h.isZero(0.0)) continue;
    if (l < frame) out.rightCols(frame - l).noalias() += h * symbols.leftCols(frame - l);
    if (preceding != nullptr) {
      // y[t] for t < l uses x[t - l] = preceding column (l - t - 1).
      for (Index t = 0; t < std::min<Index>(l, frame); ++t) {
        out.col(t).noalias() += h * preceding->col(l - t - 1);
      }
    }
  }
  return out;
}

CVector toeplitz_apply(const ChannelTaps& taps, const CVector& xi, int block_length) {
  taps.validate();
  const int m = taps.antennas;
  const int k = taps.users;
  if (block_length < 1 || xi.size() != static_cast<Index>(k) * (block_length + taps.memory)) {
    throw ShapeError("toeplitz_apply: xi must have length K (N_b + L) = " +
                     std::to_string(static_cast<Index>(k) * (block_length + taps.memory)));
  }
  CVector out = CVector::Zero(static_cast<Index>(m) * block_length);
  for (int l = 0; l <= taps.memory; ++l) {
    const CMatrix& h = taps[l];
    if (h.isZero(0.0)) continue;
    // Row block i picks column block i + l.
    out.reshaped(m, block_length).noalias() +=
        h * xi.segment(static_cast<Index>(l) * k, static_cast<Index>(k) * block_length)
                .reshaped(k, block_length);
  }
  return out;
}

CMatrix dense_toeplitz(const ChannelTaps& taps, int block_length) {
  taps.validate();
  const Index m = taps.antennas;
  const Index k = taps.users;
  CMatrix a = CMatrix::Zero(m * block_length, k * (block_length + taps.memory));
  for (Index i = 0; i < block_length; ++i) {
    for (int l = 0; l <= taps.memory; ++l) a.block(i * m, (i + l) * k, m, k) = taps[l];
  }
  return a;
}

CVector interference_term(const ChannelTaps& taps, const CMatrix& x_in, const CMatrix& x_c) {
  taps.validate();
  const int L = taps.memory;
  const Index n_b = x_c.cols();
  if (x_c.rows() != taps.users || x_in.rows() != taps.users || x_in.cols() != L || n_b <= L) {
    throw ShapeError("interference_term: expected K x L X_in and K x N_b X_c with N_b > L");
  }
  CVector out = CVector::Zero(taps.antennas * n_b);
  // Row block i >= N_b - L wraps onto column j = i + l - N_b for l > N_b - 1 - i.
  for (Index i = n_b - L; i < n_b; ++i) {
    auto row = out.segment(i * taps.antennas, taps.antennas);
    for (int l = 1; l <= L; ++l) {
      const Index j = i + l - n_b;
      if (j < 0) continue;
      row.noalias() += taps[l] * (x_in.col(j) - x_c.col(j));
    }
  }
  return out;
}

void apply_per_bin(const std::vector<CMatrix>& bins, const cd* in, cd* out, MultiplyCounter* counter) {
  if (bins.empty()) return;
  const Index rows = bins.front().rows();
  const Index cols = bins.front().cols();
  for (std::size_t i = 0; i < bins.size(); ++i) {
    Eigen::Map<CVector> y(out + static_cast<Index>(i) * rows, rows);
    Eigen::Map<const CVector> x(in + static_cast<Index>(i) * cols, cols);
    y.noalias() = bins[i] * x;
  }
  tally(counter, static_cast<std::uint64_t>(rows * cols) * bins.size());
}

CirculantOperator::CirculantOperator(const ChannelTaps& taps, int block_length)
    : block_length_(block_length),
      antennas_(taps.antennas),
      users_(taps.users),
      dft_(static_cast<std::size_t>(block_length > 0 ? block_length : 1)),
      response_(frequency_response(taps, block_length)) {}

CVector CirculantOperator::apply(const CVector& xi, MultiplyCounter* counter) const {
  if (xi.size() != static_cast<Index>(users_) * block_length_) {
    throw ShapeError("circulant apply: xi must have length K N_b");
  }
  CVector freq = dft_.apply(xi, static_cast<std::size_t>(users_), DftDirection::forward, counter);
  CVector out(static_cast<Index>(antennas_) * block_length_);
  apply_per_bin(response_.bins, freq.data(), out.data(), counter);
  dft_.transform(std::span<cd>(out.data(), static_cast<std::size_t>(out.size())),
                 static_cast<std::size_t>(antennas_), DftDirection::inverse, counter);
  return out;
}

CVector CirculantOperator::adjoint(const CVector& y, MultiplyCounter* counter) const {
  if (y.size() != static_cast<Index>(antennas_) * block_length_) {
    throw ShapeError("circulant adjoint: y must have length M N_b");
  }
  CVector freq = dft_.apply(y, static_cast<std::size_t>(antennas_), DftDirection::forward, counter);
  CVector out(static_cast<Index>(users_) * block_length_);
  for (int i = 0; i < block_length_; ++i) {
    out.segment(static_cast<Index>(i) * users_, users_).noalias() =
        response_.bins[static_cast<std::size_t>(i)].adjoint() *
        freq.segment(static_cast<Index>(i) * antennas_, antennas_);
  }
  tally(counter, static_cast<std::uint64_t>(antennas_) * users_ * block_length_);
  dft_.transform(std::span<cd>(out.data(), static_cast<std::size_t>(out.size())),
                 static_cast<std::size_t>(users_), DftDirection::inverse, counter);
  return out;
}

CVector circulant_apply(const ChannelTaps& taps, const CVector& xi_c, int block_length) {
  return CirculantOperator(taps, block_length).apply(xi_c);
}

CVector adjoint_circulant_apply(const ChannelTaps& taps, const CVector& y, int block_length) {
  return CirculantOperator(taps, block_length).adjoint(y);
}

}  // namespace onebit
