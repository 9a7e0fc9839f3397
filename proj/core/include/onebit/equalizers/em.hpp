// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "onebit/equalizers/wiener.hpp"
#include "onebit/numerics/special_functions.hpp"

namespace onebit {

enum class Initializer { wf_quantized, wf_unquantized, zeros, given };

struct EmPolicy {
  int max_iterations = 1000;   // I_max
  double rel_tolerance = 1e-3; // gamma_EM
  Initializer initializer = Initializer::wf_quantized;
  /// When false only I_max ends the iteration.
  bool early_stop = true;

  /// Throws ConfigError unless max_iterations >= 1 and rel_tolerance > 0.
  void validate() const;
};

struct EqualizerEstimate {
  CVector xi;                          ///< stacked estimate, length P
  CMatrix symbols;                     ///< xi as K x (P / K), newest column first
  int iterations_used = 0;
  std::vector<double> residual_history;  ///< ||xi(u) - xi(u-1)|| / ||xi(u)|| per iteration
  std::uint64_t multiply_count = 0;
};

/// Linear model y = A xi + eta with Gaussian prior xi ~ CN(0, sv I), as seen
/// by the EM iteration: the forward product z = A xi and the regularized
/// inverse G y.
class EmKernel {
 public:
  EmKernel(int users, double noise_variance, double signal_variance);
  virtual ~EmKernel() = default;

  [[nodiscard]] virtual Index unknowns() const = 0;      // P
  [[nodiscard]] virtual Index observations() const = 0;  // M N_b
  [[nodiscard]] virtual CVector forward(const CVector& xi, MultiplyCounter* counter) const = 0;
  [[nodiscard]] virtual CVector m_step(const CVector& y_hat, MultiplyCounter* counter) const = 0;

  [[nodiscard]] int users() const noexcept { return users_; }
  [[nodiscard]] double noise_variance() const noexcept { return noise_variance_; }
  [[nodiscard]] double signal_variance() const noexcept { return signal_variance_; }
  /// Whether the sigma/sqrt(2) scaling of the E-step is part of the tally
  /// (time-domain accounting) or ignored (frequency-domain accounting).
  [[nodiscard]] virtual bool counts_e_step_scaling() const noexcept = 0;

 private:
  int users_;
  double noise_variance_;
  double signal_variance_;
};

/// Dense time-domain kernel. G = (A^H A + (nv / sv) I)^{-1} A^H is formed once
/// (the static cost P^3 + P^2 M N_b); each iteration then costs M N_b (P + 1)
/// for A xi plus the E-step scaling and P M N_b for G y.
class TimeDomainEmKernel final : public EmKernel {
 public:
  TimeDomainEmKernel(CMatrix a, int users, double noise_variance, double signal_variance);

  /// Exact block-Toeplitz model, P = K (N_b + L).
  [[nodiscard]] static TimeDomainEmKernel exact(const ChannelTaps& taps, int block_length,
                                                double noise_variance, double signal_variance);

  [[nodiscard]] Index unknowns() const override { return a_.cols(); }
  [[nodiscard]] Index observations() const override { return a_.rows(); }
  [[nodiscard]] CVector forward(const CVector& xi, MultiplyCounter* counter) const override;
  [[nodiscard]] CVector m_step(const CVector& y_hat, MultiplyCounter* counter) const override;
  [[nodiscard]] bool counts_e_step_scaling() const noexcept override { return true; }

  [[nodiscard]] const CMatrix& model() const noexcept { return a_; }
  [[nodiscard]] const CMatrix& equalizer() const noexcept { return g_; }

 private:
  CMatrix a_;
  CMatrix g_;
};

/// Mismatched (block-circulant) kernel: both products go through the block
/// DFT and per-bin matrices, so each iteration costs
/// 2 ((M + K) log2 N_b + K M) N_b under the transform accounting convention.
class FrequencyDomainEmKernel final : public EmKernel {
 public:
  FrequencyDomainEmKernel(std::shared_ptr<const CirculantOperator> op, double noise_variance,
                          double signal_variance, MultiplyCounter* static_counter = nullptr);

  [[nodiscard]] Index unknowns() const override;
  [[nodiscard]] Index observations() const override;
  [[nodiscard]] CVector forward(const CVector& xi, MultiplyCounter* counter) const override;
  [[nodiscard]] CVector m_step(const CVector& y_hat, MultiplyCounter* counter) const override;
  [[nodiscard]] bool counts_e_step_scaling() const noexcept override { return false; }

  [[nodiscard]] const LinearFde& equalizer() const noexcept { return g_; }
  [[nodiscard]] const CirculantOperator& op() const noexcept { return *op_; }

 private:
  std::shared_ptr<const CirculantOperator> op_;
  LinearFde g_;
};

/// One M-step on the exact model: solves (A^H A + (nv / sv) I) xi = A^H y_hat.
[[nodiscard]] CVector em_m_step_time(const ChannelTaps& taps, const CVector& y_hat,
                                     int block_length, double noise_variance,
                                     double signal_variance);

/// One M-step on the block-circulant model through per-bin filters.
[[nodiscard]] CVector em_m_step_freq(const CirculantOperator& op, const CVector& y_hat,
                                     double noise_variance, double signal_variance);

/// Expectation-maximization MAP equalizer.
///
/// Alternates y(u) = E[y | r, xi(u)] and xi(u+1) = G y(u) starting from
/// `initial`; stops once ||xi(u+1) - xi(u)|| <= gamma ||xi(u+1)|| (if
/// enabled) or after I_max iterations. Throws ShapeError if `initial` or `r`
/// do not fit the kernel.
[[nodiscard]] EqualizerEstimate em_equalize(const EmKernel& kernel, const CVector& r,
                                            const EmPolicy& policy, const CVector& initial,
                                            MultiplyCounter* counter = nullptr,
                                            MillsRatioFn mills = mills_ratio);

}  // namespace onebit
