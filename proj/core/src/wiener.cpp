// SPDX-License-Identifier: Apache-2.0
#include "onebit/equalizers/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "onebit/error.hpp"

namespace onebit {
namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

double clamped_asin(double x) noexcept { return std::asin(std::clamp(x, -1.0, 1.0)); }

// Elementwise (2/pi)(asin(Re c / sqrt(d_a d_b)) + j asin(Im c / sqrt(d_a d_b))).
// With `unit_diagonal` the diagonal is set to exactly 1: rounding in c_aa / d_a
// would otherwise cost sqrt(eps) through the infinite slope of asin at 1.
CMatrix arcsine_law(const CMatrix& c, const RVector& inv_sqrt_d, bool unit_diagonal) {
  CMatrix out(c.rows(), c.cols());
  for (Index b = 0; b < c.cols(); ++b) {
    for (Index a = 0; a < c.rows(); ++a) {
      const double s = inv_sqrt_d[a] * inv_sqrt_d[b];
      out(a, b) = kTwoOverPi * cd(clamped_asin(c(a, b).real() * s), clamped_asin(c(a, b).imag() * s));
    }
  }
  if (unit_diagonal) out.diagonal().setOnes();
  return out;
}

// Factorization of a Hermitian positive-definite matrix, loading the diagonal
// once if the plain factorization fails.
Eigen::LLT<CMatrix> factor_with_loading(CMatrix c, bool& loaded) {
  Eigen::LLT<CMatrix> llt(c);
  if (llt.info() == Eigen::Success) return llt;
  loaded = true;
  const double load = 1e-10 * c.trace().real() / static_cast<double>(c.rows());
  c.diagonal().array() += load;
  llt.compute(c);
  return llt;
}

void require_positive(double noise_variance, double signal_variance) {
  if (!(noise_variance > 0.0) || !(signal_variance > 0.0)) {
    throw ConfigError("noise and signal variances must be positive");
  }
}

}  // namespace

LinearFde::LinearFde(std::shared_ptr<const CirculantOperator> op, std::vector<CMatrix> filters,
                     bool diagonal_loading)
    : op_(std::move(op)), filters_(std::move(filters)), diagonal_loading_(diagonal_loading) {
  if (!op_ || filters_.size() != static_cast<std::size_t>(op_->block_length())) {
    throw ShapeError("LinearFde: need one filter per bin");
  }
}

CVector LinearFde::apply(const CVector& r, MultiplyCounter* counter) const {
  const Index m = op_->antennas();
  const Index k = op_->users();
  const Index n_b = op_->block_length();
  if (r.size() != m * n_b) throw ShapeError("LinearFde: observation length must be M N_b");
  const CVector freq = op_->dft().apply(r, static_cast<std::size_t>(m), DftDirection::forward, counter);
  CVector out(k * n_b);
  apply_per_bin(filters_, freq.data(), out.data(), counter);
  op_->dft().transform(std::span<cd>(out.data(), static_cast<std::size_t>(out.size())),
                       static_cast<std::size_t>(k), DftDirection::inverse, counter);
  return out;
}

LinearFde make_unquantized_fde(std::shared_ptr<const CirculantOperator> op, double noise_variance,
                               double signal_variance, MultiplyCounter* counter) {
  require_positive(noise_variance, signal_variance);
  const double ratio = noise_variance / signal_variance;
  const Index k = op->users();
  const Index m = op->antennas();
  std::vector<CMatrix> filters;
  filters.reserve(op->response().bins.size());
  for (const CMatrix& h : op->response().bins) {
    CMatrix normal = h.adjoint() * h;
    normal.diagonal().array() += ratio;
    filters.emplace_back(normal.llt().solve(h.adjoint()));
  }
  // Tap transform plus 2 K^2 M + K^3 per bin.
  tally(counter, op->dft().nominal_multiplies(static_cast<std::size_t>(k * m)) +
                     static_cast<std::uint64_t>(2 * k * k * m + k * k * k) *
                         static_cast<std::uint64_t>(op->block_length()));
  return {std::move(op), std::move(filters)};
}

LinearFde make_quantized_fde(std::shared_ptr<const CirculantOperator> op, double noise_variance,
                             double signal_variance) {
  require_positive(noise_variance, signal_variance);
  const Index m = op->antennas();
  const Index n_b = op->block_length();
  const auto& bins = op->response().bins;
  const auto streams = static_cast<std::size_t>(m * m);
  const double sqrt_n = std::sqrt(static_cast<double>(n_b));

  // Spectra of the unquantized covariance, then its first block row.
  CVector stacked(m * m * n_b);
  for (Index i = 0; i < n_b; ++i) {
    CMatrix spectrum = signal_variance * bins[static_cast<std::size_t>(i)] *
                       bins[static_cast<std::size_t>(i)].adjoint();
    spectrum.diagonal().array() += noise_variance;
    stacked.segment(i * m * m, m * m) = spectrum.reshaped();
  }
  std::span<cd> view(stacked.data(), static_cast<std::size_t>(stacked.size()));
  op->dft().transform(view, streams, DftDirection::forward);
  stacked /= sqrt_n;

  RVector inv_sqrt_d(m);
  for (Index a = 0; a < m; ++a) inv_sqrt_d[a] = 1.0 / std::sqrt(stacked[a + a * m].real());

  for (Index j = 0; j < n_b; ++j) {
    auto lag = stacked.segment(j * m * m, m * m).reshaped(m, m);
    lag = arcsine_law(CMatrix(lag), inv_sqrt_d, j == 0);
  }
  op->dft().transform(view, streams, DftDirection::inverse);
  stacked *= sqrt_n;

  const RVector bussgang = std::sqrt(kTwoOverPi) * inv_sqrt_d;
  const double gain = signal_variance / std::numbers::sqrt2;
  bool loaded = false;
  std::vector<CMatrix> filters;
  filters.reserve(static_cast<std::size_t>(n_b));
  for (Index i = 0; i < n_b; ++i) {
    CMatrix c_r = stacked.segment(i * m * m, m * m).reshaped(m, m);
    c_r = 0.5 * (c_r + c_r.adjoint()).eval();
    const auto llt = factor_with_loading(std::move(c_r), loaded);
    const CMatrix rhs = bussgang.asDiagonal() * bins[static_cast<std::size_t>(i)];
    filters.emplace_back(gain * llt.solve(rhs).adjoint());
  }
  return {std::move(op), std::move(filters), loaded};
}

CVector wf_unquantized_exact(const ChannelTaps& taps, const CVector& r, int block_length,
                             double noise_variance, double signal_variance) {
  require_positive(noise_variance, signal_variance);
  const CMatrix a = dense_toeplitz(taps, block_length);
  if (r.size() != a.rows()) throw ShapeError("wf_unquantized_exact: observation length must be M N_b");
  CMatrix normal = a.adjoint() * a;
  normal.diagonal().array() += noise_variance / signal_variance;
  return normal.llt().solve(a.adjoint() * r);
}

CVector wf_unquantized_circulant(const ChannelTaps& taps, const CVector& r, int block_length,
                                 double noise_variance, double signal_variance) {
  auto op = std::make_shared<const CirculantOperator>(taps, block_length);
  return make_unquantized_fde(std::move(op), noise_variance, signal_variance).apply(r);
}

CMatrix quantized_wiener_matrix(const CMatrix& a, double noise_variance, double signal_variance,
                                bool* loaded) {
  require_positive(noise_variance, signal_variance);
  CMatrix c_y = signal_variance * a * a.adjoint();
  c_y.diagonal().array() += noise_variance;
  const RVector inv_sqrt_d = c_y.diagonal().real().cwiseSqrt().cwiseInverse();
  bool load_flag = false;
  const auto llt = factor_with_loading(arcsine_law(c_y, inv_sqrt_d, true), load_flag);
  if (loaded != nullptr) *loaded = load_flag;
  const RVector bussgang = std::sqrt(kTwoOverPi) * inv_sqrt_d;
  const CMatrix rhs = bussgang.asDiagonal() * a;
  return (signal_variance / std::numbers::sqrt2) * llt.solve(rhs).adjoint();
}

DenseWienerResult wf_quantized_dense(const CMatrix& a, const CVector& r, double noise_variance,
                                     double signal_variance) {
  if (r.size() != a.rows()) throw ShapeError("wf_quantized_dense: observation length mismatch");
  DenseWienerResult out;
  out.estimate = quantized_wiener_matrix(a, noise_variance, signal_variance, &out.diagonal_loading) * r;
  return out;
}

DenseWienerResult wf_quantized_exact(const ChannelTaps& taps, const CVector& r, int block_length,
                                     double noise_variance, double signal_variance) {
  return wf_quantized_dense(dense_toeplitz(taps, block_length), r, noise_variance, signal_variance);
}

CVector wf_quantized_circulant(const ChannelTaps& taps, const CVector& r, int block_length,
                               double noise_variance, double signal_variance) {
  auto op = std::make_shared<const CirculantOperator>(taps, block_length);
  return make_quantized_fde(std::move(op), noise_variance, signal_variance).apply(r);
}

}  // namespace onebit
