// SPDX-License-Identifier: Apache-2.0
#include "onebit/harness/experiment.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include <spdlog/spdlog.h>

#include "onebit/channel/channel_taps.hpp"
#include "onebit/channel/operators.hpp"
#include "onebit/equalizers/block.hpp"
#include "onebit/equalizers/em.hpp"
#include "onebit/equalizers/schedule.hpp"
#include "onebit/equalizers/wiener.hpp"
#include "onebit/error.hpp"
#include "onebit/harness/eb_n0.hpp"
#include "onebit/signal/constellation.hpp"
#include "onebit/signal/noise.hpp"
#include "onebit/signal/quantizer.hpp"

namespace onebit {
namespace {

struct Tally {
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t iterations = 0;
  std::uint64_t blocks = 0;
  std::uint64_t multiplies = 0;

  void merge(const Tally& o) {
    bit_errors += o.bit_errors;
    bits += o.bits;
    iterations += o.iterations;
    blocks += o.blocks;
    multiplies += o.multiplies;
  }
};

struct Realization {
  ChannelTaps taps;
  BitMatrix bits;   // K x 4 T
  CMatrix clean;    // unit-power symbols through the channel, M x T
  CMatrix noise;    // unit variance, M x T (empty when noiseless)
};

Realization draw_realization(const ExperimentConfig& cfg, std::uint64_t index) {
  const SystemConfig& s = cfg.system;
  const RngStream root = RngStream(cfg.seed).split(index);
  RngStream channel_rng = root.split(0);
  RngStream bit_rng = root.split(1);
  RngStream noise_rng = root.split(2);

  Realization out;
  out.taps = generate_eva_taps(s.antennas, s.users, s.channel_memory, s.sample_period_ns, channel_rng);
  out.bits = draw_bits(s.users, Qam16::kBitsPerSymbol * s.frame_length, bit_rng);
  const SymbolFrame frame = Qam16(1.0).modulate(out.bits);
  out.clean = apply_channel(out.taps, frame.symbols, CMatrix::Zero(s.antennas, s.frame_length));
  if (!s.noiseless) out.noise = draw_awgn(s.antennas, s.frame_length, 1.0, noise_rng);
  return out;
}

/// Filters for one realization at one Eb/N0 point, built on first use and
/// shared by every equalizer with the same block length.
class FilterCache {
 public:
  FilterCache(const ChannelTaps& taps, double noise_variance, double signal_variance)
      : taps_(taps), nv_(noise_variance), sv_(signal_variance) {}

  std::shared_ptr<const CirculantOperator> op(int n_b) {
    auto& slot = ops_[n_b];
    if (!slot) slot = std::make_shared<const CirculantOperator>(taps_, n_b);
    return slot;
  }
  const LinearFde& wf_m(int n_b) {
    auto& slot = wf_m_[n_b];
    if (!slot) slot = std::make_unique<LinearFde>(make_unquantized_fde(op(n_b), nv_, sv_));
    return *slot;
  }
  const LinearFde& wf_mq(int n_b) {
    auto& slot = wf_mq_[n_b];
    if (!slot) slot = std::make_unique<LinearFde>(make_quantized_fde(op(n_b), nv_, sv_));
    return *slot;
  }
  const CMatrix& dense(int n_b) {
    auto it = dense_.find(n_b);
    if (it == dense_.end()) it = dense_.emplace(n_b, dense_toeplitz(taps_, n_b)).first;
    return it->second;
  }
  const CMatrix& wf_e(int n_b) {
    auto it = wf_e_.find(n_b);
    if (it == wf_e_.end()) {
      const CMatrix& a = dense(n_b);
      CMatrix normal = a.adjoint() * a;
      normal.diagonal().array() += nv_ / sv_;
      it = wf_e_.emplace(n_b, normal.llt().solve(a.adjoint())).first;
    }
    return it->second;
  }
  const CMatrix& wf_eq(int n_b) {
    auto it = wf_eq_.find(n_b);
    if (it == wf_eq_.end()) it = wf_eq_.emplace(n_b, quantized_wiener_matrix(dense(n_b), nv_, sv_)).first;
    return it->second;
  }

 private:
  const ChannelTaps& taps_;
  double nv_;
  double sv_;
  std::map<int, std::shared_ptr<const CirculantOperator>> ops_;
  std::map<int, std::unique_ptr<LinearFde>> wf_m_;
  std::map<int, std::unique_ptr<LinearFde>> wf_mq_;
  std::map<int, CMatrix> dense_;
  std::map<int, CMatrix> wf_e_;
  std::map<int, CMatrix> wf_eq_;
};

CVector dense_apply(const CMatrix& w, const CVector& r, MultiplyCounter* counter) {
  tally(counter, static_cast<std::uint64_t>(w.rows()) * static_cast<std::uint64_t>(w.cols()));
  return w * r;
}

/// Runs one equalizer over the whole frame and counts errors on kept symbols.
Tally run_equalizer(const EqualizerSpec& spec, const Realization& real, const CMatrix& r,
                    double signal_variance, double noise_variance, FilterCache& cache,
                    MillsRatioFn mills) {
  const int n_b = spec.block_length;
  const int k = real.taps.users;
  MultiplyCounter counter;
  Tally t;

  std::unique_ptr<EmKernel> kernel;
  if (spec.kind == EqualizerKind::em_m) {
    kernel = std::make_unique<FrequencyDomainEmKernel>(cache.op(n_b), noise_variance, signal_variance,
                                                       &counter);
  } else if (spec.kind == EqualizerKind::em_e) {
    const CMatrix& a = cache.dense(n_b);
    kernel = std::make_unique<TimeDomainEmKernel>(a, k, noise_variance, signal_variance);
    const auto p = static_cast<std::uint64_t>(a.cols());
    const auto mn = static_cast<std::uint64_t>(a.rows());
    counter.add(p * p * p + p * p * mn);
  }

  auto initial = [&](const CVector& rb) -> CVector {
    const bool exact = spec.kind == EqualizerKind::em_e;
    switch (spec.policy.initializer) {
      case Initializer::wf_quantized:
        return exact ? CVector(cache.wf_eq(n_b) * rb) : cache.wf_mq(n_b).apply(rb);
      case Initializer::wf_unquantized:
        return exact ? CVector(cache.wf_e(n_b) * rb) : cache.wf_m(n_b).apply(rb);
      default:
        return CVector::Zero(kernel->unknowns());
    }
  };

  const Qam16 qam(1.0);
  const double inv_sx = 1.0 / std::sqrt(signal_variance);
  for (const BlockWindow& w :
       overlap_discard_schedule(r.cols(), n_b, spec.overlap)) {
    const CVector rb = stack_block(r, w.start, n_b);
    CVector xi;
    switch (spec.kind) {
      case EqualizerKind::wf_e: xi = dense_apply(cache.wf_e(n_b), rb, &counter); break;
      case EqualizerKind::wf_eq: xi = dense_apply(cache.wf_eq(n_b), rb, &counter); break;
      case EqualizerKind::wf_m: xi = cache.wf_m(n_b).apply(rb, &counter); break;
      case EqualizerKind::wf_mq: xi = cache.wf_mq(n_b).apply(rb, &counter); break;
      case EqualizerKind::em_e:
      case EqualizerKind::em_m: {
        EqualizerEstimate est = em_equalize(*kernel, rb, spec.policy, initial(rb), &counter, mills);
        t.iterations += static_cast<std::uint64_t>(est.iterations_used);
        xi = std::move(est.xi);
        break;
      }
    }
    ++t.blocks;
    const Index kept = w.keep_to - w.keep_from;
    const CMatrix x = unstack_block(xi, k, n_b).middleCols(w.keep_from, kept) * inv_sx;
    const BitMatrix decided = qam.demodulate_hard(x);
    const auto sent = real.bits.middleCols(Qam16::kBitsPerSymbol * (w.start + w.keep_from),
                                           Qam16::kBitsPerSymbol * kept);
    t.bit_errors += static_cast<std::uint64_t>((decided.array() != sent.array()).count());
    t.bits += static_cast<std::uint64_t>(decided.size());
  }
  t.multiplies = counter.count();
  return t;
}

/// Tallies indexed [equalizer * n_snr + snr].
std::vector<Tally> run_realization(const ExperimentConfig& cfg, std::uint64_t index,
                                   MillsRatioFn mills) {
  const SystemConfig& s = cfg.system;
  const Realization real = draw_realization(cfg, index);
  const std::size_t n_snr = cfg.eb_n0_db.size();
  std::vector<Tally> out(cfg.equalizers.size() * n_snr);
  for (std::size_t j = 0; j < n_snr; ++j) {
    const double sv = eb_n0_to_signal_variance(cfg.eb_n0_db[j], s.users, s.noise_variance);
    CMatrix y = std::sqrt(sv) * real.clean;
    if (!s.noiseless) y += std::sqrt(s.noise_variance) * real.noise;
    const CMatrix r = s.quantize ? quantize_1bit(y) : y;
    FilterCache cache(real.taps, s.noise_variance, sv);
    for (std::size_t e = 0; e < cfg.equalizers.size(); ++e) {
      out[e * n_snr + j] = run_equalizer(cfg.equalizers[e], real, r, sv, s.noise_variance, cache, mills);
    }
  }
  return out;
}

}  // namespace

std::vector<BerPoint> run_ber_sweep(const ExperimentConfig& cfg, const RunOptions& options) {
  if (const auto issues = validate(cfg); !issues.empty()) {
    throw ConfigError("invalid config: " + issues.front().field + ": " + issues.front().message);
  }
  const auto n_real = static_cast<std::size_t>(cfg.realizations);
  std::vector<std::vector<Tally>> per_realization(n_real);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t v = next++; v < n_real; v = next++) {
      try {
        per_realization[v] = run_realization(cfg, v, options.mills);
        spdlog::debug("realization {}/{} done", v + 1, n_real);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_real;
      }
    }
  };
  const int workers = std::max(1, std::min(options.workers, cfg.realizations));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const std::size_t n_snr = cfg.eb_n0_db.size();
  std::vector<Tally> total(cfg.equalizers.size() * n_snr);
  for (const auto& tallies : per_realization) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i].merge(tallies[i]);
  }

  std::vector<BerPoint> points;
  points.reserve(total.size());
  for (std::size_t e = 0; e < cfg.equalizers.size(); ++e) {
    for (std::size_t j = 0; j < n_snr; ++j) {
      const Tally& t = total[e * n_snr + j];
      BerPoint p;
      p.equalizer = cfg.equalizers[e].label;
      p.eb_n0_db = cfg.eb_n0_db[j];
      p.bit_errors = t.bit_errors;
      p.bits = t.bits;
      p.ber = t.bits > 0 ? static_cast<double>(t.bit_errors) / static_cast<double>(t.bits) : 0.0;
      p.mean_iterations = t.blocks > 0 ? static_cast<double>(t.iterations) / static_cast<double>(t.blocks) : 0.0;
      p.multiplies = t.multiplies;
      points.push_back(std::move(p));
    }
  }
  return points;
}

ExperimentConfig fixed_iteration_config(const ExperimentConfig& cfg) {
  ExperimentConfig out = cfg;
  out.equalizers.clear();
  for (const EqualizerSpec& spec : cfg.equalizers) {
    if (!is_em(spec.kind)) {
      out.equalizers.push_back(spec);
      continue;
    }
    for (int i_max : cfg.fixed_iterations) {
      EqualizerSpec fixed = spec;
      fixed.label = spec.label + "@I=" + std::to_string(i_max);
      fixed.policy.max_iterations = i_max;
      fixed.policy.early_stop = false;
      out.equalizers.push_back(std::move(fixed));
    }
  }
  return out;
}

std::vector<BerPoint> run_fixed_iteration_study(const ExperimentConfig& cfg, const RunOptions& options) {
  return run_ber_sweep(fixed_iteration_config(cfg), options);
}

}  // namespace onebit
