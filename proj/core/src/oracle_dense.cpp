// SPDX-License-Identifier: Apache-2.0
#include "onebit/oracles/dense_models.hpp"

#include <cmath>
#include <numbers>

namespace onebit::oracle {

CMatrix dft_matrix(int n) {
  CMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int t = 0; t < n; ++t) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(k) * t) % n) / n;
      f(k, t) = scale * cd(std::cos(angle), std::sin(angle));
    }
  }
  return f;
}

CMatrix kron_identity(const CMatrix& a, int size) {
  CMatrix out = CMatrix::Zero(a.rows() * size, a.cols() * size);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      for (int s = 0; s < size; ++s) out(i * size + s, j * size + s) = a(i, j);
    }
  }
  return out;
}

CVector naive_block_dft(const CVector& x, int streams, bool inverse) {
  const int n = static_cast<int>(x.size()) / streams;
  const CMatrix f = dft_matrix(n);
  return kron_identity(inverse ? CMatrix(f.adjoint()) : f, streams) * x;
}

std::vector<CMatrix> naive_frequency_response(const ChannelTaps& taps, int block_length) {
  std::vector<CMatrix> bins;
  for (int i = 0; i < block_length; ++i) {
    CMatrix h = CMatrix::Zero(taps.antennas, taps.users);
    for (int l = 0; l <= taps.memory; ++l) {
      const double angle = -2.0 * std::numbers::pi * l * i / block_length;
      h += taps[l] * cd(std::cos(angle), std::sin(angle));
    }
    bins.push_back(h);
  }
  return bins;
}

CMatrix block_diagonal(const std::vector<CMatrix>& blocks) {
  Index rows = 0;
  Index cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Index r = 0;
  Index c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMatrix toeplitz_matrix(const ChannelTaps& taps, int block_length) {
  const int m = taps.antennas;
  const int k = taps.users;
  const int l_max = taps.memory;
  CMatrix out = CMatrix::Zero(m * block_length, k * (block_length + l_max));
  for (int i = 0; i < block_length; ++i) {
    for (int j = 0; j < block_length + l_max; ++j) {
      const int l = j - i;
      if (l >= 0 && l <= l_max) out.block(i * m, j * k, m, k) = taps[l];
    }
  }
  return out;
}

CMatrix circulant_matrix(const ChannelTaps& taps, int block_length) {
  const int m = taps.antennas;
  const int k = taps.users;
  CMatrix out = CMatrix::Zero(m * block_length, k * block_length);
  for (int i = 0; i < block_length; ++i) {
    for (int j = 0; j < block_length; ++j) {
      const int l = ((j - i) % block_length + block_length) % block_length;
      if (l <= taps.memory) out.block(i * m, j * k, m, k) = taps[l];
    }
  }
  return out;
}

CMatrix interference_matrix(const ChannelTaps& taps, int block_length) {
  const int m = taps.antennas;
  const int k = taps.users;
  CMatrix out = CMatrix::Zero(m * block_length, k * block_length);
  for (int i = 0; i < block_length; ++i) {
    for (int j = 0; j < block_length; ++j) {
      const int l = j + block_length - i;
      if (l >= 1 && l <= taps.memory) out.block(i * m, j * k, m, k) = taps[l];
    }
  }
  return out;
}

CVector regularized_solve(const CMatrix& a, const CVector& y, double noise_variance,
                          double signal_variance) {
  CMatrix normal = a.adjoint() * a;
  normal += (noise_variance / signal_variance) * CMatrix::Identity(a.cols(), a.cols());
  return normal.fullPivLu().solve(CVector(a.adjoint() * y));
}

}  // namespace onebit::oracle
