// SPDX-License-Identifier: Apache-2.0
#include "onebit/equalizers/em.hpp"

#include <limits>
#include <utility>

#include "onebit/equalizers/e_step.hpp"
#include "onebit/error.hpp"

namespace onebit {

void EmPolicy::validate() const {
  if (max_iterations < 1) throw ConfigError("EM: max_iterations must be at least 1");
  if (!(rel_tolerance > 0.0)) throw ConfigError("EM: rel_tolerance must be positive");
}

EmKernel::EmKernel(int users, double noise_variance, double signal_variance)
    : users_(users), noise_variance_(noise_variance), signal_variance_(signal_variance) {
  if (!(noise_variance > 0.0) || !(signal_variance > 0.0)) {
    throw ConfigError("EM: noise and signal variances must be positive");
  }
}

TimeDomainEmKernel::TimeDomainEmKernel(CMatrix a, int users, double noise_variance,
                                       double signal_variance)
    : EmKernel(users, noise_variance, signal_variance), a_(std::move(a)) {
  CMatrix normal = a_.adjoint() * a_;
  normal.diagonal().array() += noise_variance / signal_variance;
  g_ = normal.llt().solve(a_.adjoint());
}

TimeDomainEmKernel TimeDomainEmKernel::exact(const ChannelTaps& taps, int block_length,
                                             double noise_variance, double signal_variance) {
  if (block_length <= taps.memory) throw ConfigError("EM: N_b must exceed L");
  return {dense_toeplitz(taps, block_length), taps.users, noise_variance, signal_variance};
}

CVector TimeDomainEmKernel::forward(const CVector& xi, MultiplyCounter* counter) const {
  tally(counter, static_cast<std::uint64_t>(a_.rows()) * static_cast<std::uint64_t>(a_.cols()));
  return a_ * xi;
}

CVector TimeDomainEmKernel::m_step(const CVector& y_hat, MultiplyCounter* counter) const {
  tally(counter, static_cast<std::uint64_t>(g_.rows()) * static_cast<std::uint64_t>(g_.cols()));
  return g_ * y_hat;
}

FrequencyDomainEmKernel::FrequencyDomainEmKernel(std::shared_ptr<const CirculantOperator> op,
                                                 double noise_variance, double signal_variance,
                                                 MultiplyCounter* static_counter)
    : EmKernel(op->users(), noise_variance, signal_variance),
      op_(op),
      g_(make_unquantized_fde(std::move(op), noise_variance, signal_variance, static_counter)) {}

Index FrequencyDomainEmKernel::unknowns() const {
  return static_cast<Index>(op_->users()) * op_->block_length();
}

Index FrequencyDomainEmKernel::observations() const {
  return static_cast<Index>(op_->antennas()) * op_->block_length();
}

CVector FrequencyDomainEmKernel::forward(const CVector& xi, MultiplyCounter* counter) const {
  return op_->apply(xi, counter);
}

CVector FrequencyDomainEmKernel::m_step(const CVector& y_hat, MultiplyCounter* counter) const {
  return g_.apply(y_hat, counter);
}

CVector em_m_step_time(const ChannelTaps& taps, const CVector& y_hat, int block_length,
                       double noise_variance, double signal_variance) {
  if (block_length <= taps.memory) throw ConfigError("EM: N_b must exceed L");
  const CMatrix a = dense_toeplitz(taps, block_length);
  if (y_hat.size() != a.rows()) throw ShapeError("em_m_step_time: y_hat must have length M N_b");
  CMatrix normal = a.adjoint() * a;
  normal.diagonal().array() += noise_variance / signal_variance;
  return normal.llt().solve(a.adjoint() * y_hat);
}

CVector em_m_step_freq(const CirculantOperator& op, const CVector& y_hat, double noise_variance,
                       double signal_variance) {
  // Non-owning handle; the filter does not outlive this call.
  std::shared_ptr<const CirculantOperator> view(&op, [](const CirculantOperator*) {});
  return make_unquantized_fde(std::move(view), noise_variance, signal_variance).apply(y_hat);
}

EqualizerEstimate em_equalize(const EmKernel& kernel, const CVector& r, const EmPolicy& policy,
                              const CVector& initial, MultiplyCounter* counter, MillsRatioFn mills) {
  policy.validate();
  if (r.size() != kernel.observations()) throw ShapeError("em_equalize: r must have length M N_b");
  if (initial.size() != kernel.unknowns()) {
    throw ShapeError("em_equalize: initial estimate must have length P = " +
                     std::to_string(kernel.unknowns()));
  }
  MultiplyCounter local;
  EqualizerEstimate out;
  out.xi = initial;
  out.residual_history.reserve(static_cast<std::size_t>(std::min(policy.max_iterations, 64)));
  for (int u = 0; u < policy.max_iterations; ++u) {
    const CVector z = kernel.forward(out.xi, &local);
    const CVector y_hat = e_step(r, z, kernel.noise_variance(), mills);
    if (kernel.counts_e_step_scaling()) local.add(static_cast<std::uint64_t>(r.size()));
    CVector next = kernel.m_step(y_hat, &local);

    const double change = (next - out.xi).norm();
    const double size = next.norm();
    out.residual_history.push_back(size > 0.0 ? change / size
                                              : (change == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()));
    out.xi = std::move(next);
    out.iterations_used = u + 1;
    if (policy.early_stop && change <= policy.rel_tolerance * size) break;
  }
  out.symbols = out.xi.reshaped(kernel.users(), kernel.unknowns() / kernel.users());
  out.multiply_count = local.count();
  if (counter != nullptr) counter->merge(local);
  return out;
}

}  // namespace onebit
