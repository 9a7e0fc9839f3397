// SPDX-License-Identifier: Apache-2.0
#include "onebit/harness/config.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <set>
#include <utility>

#include "onebit/channel/channel_taps.hpp"

namespace onebit {
namespace {

constexpr std::array<std::pair<EqualizerKind, const char*>, 6> kKindNames{{
    {EqualizerKind::wf_e, "WF_E"},
    {EqualizerKind::wf_m, "WF_M"},
    {EqualizerKind::wf_eq, "WF_EQ"},
    {EqualizerKind::wf_mq, "WF_MQ"},
    {EqualizerKind::em_e, "EM_E"},
    {EqualizerKind::em_m, "EM_M"},
}};

constexpr std::array<std::pair<Initializer, const char*>, 4> kInitNames{{
    {Initializer::wf_quantized, "wf_quantized"},
    {Initializer::wf_unquantized, "wf_unquantized"},
    {Initializer::zeros, "zeros"},
    {Initializer::given, "given"},
}};

}  // namespace

std::string to_string(EqualizerKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<EqualizerKind> parse_equalizer_kind(const std::string& name) {
  for (const auto& [k, n] : kKindNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

bool is_em(EqualizerKind kind) noexcept {
  return kind == EqualizerKind::em_e || kind == EqualizerKind::em_m;
}

bool uses_exact_model(EqualizerKind kind) noexcept {
  return kind == EqualizerKind::wf_e || kind == EqualizerKind::wf_eq || kind == EqualizerKind::em_e;
}

bool needs_quantized_input(EqualizerKind kind) noexcept {
  return kind == EqualizerKind::wf_eq || kind == EqualizerKind::wf_mq || is_em(kind);
}

std::string to_string(Initializer init) {
  for (const auto& [k, name] : kInitNames) {
    if (k == init) return name;
  }
  return "?";
}

std::optional<Initializer> parse_initializer(const std::string& name) {
  for (const auto& [k, n] : kInitNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

std::vector<ValidationIssue> validate(const ExperimentConfig& cfg) {
  std::vector<ValidationIssue> issues;
  auto fail = [&](std::string field, std::string message) {
    issues.push_back({std::move(field), std::move(message)});
  };
  const SystemConfig& s = cfg.system;
  if (s.users < 1) fail("system.users", "must be at least 1");
  if (s.antennas < 1) fail("system.antennas", "must be at least 1");
  if (s.channel_memory < 0) fail("system.channel_memory", "must be nonnegative");
  if (s.frame_length < 1) fail("system.frame_length", "must be at least 1");
  if (!(s.noise_variance > 0.0) || !std::isfinite(s.noise_variance)) {
    fail("system.noise_variance", "must be positive");
  }
  if (s.sample_period_ns && !(*s.sample_period_ns > 0.0)) {
    fail("system.sample_period_ns", "must be positive");
  } else if (s.channel_memory >= 0) {
    try {
      const auto pdp = PowerDelayProfile::extended_vehicular_a();
      const double period = s.sample_period_ns.value_or(0.0) > 0.0
                                ? *s.sample_period_ns
                                : stretched_sample_period_ns(pdp, s.channel_memory);
      (void)sampled_tap_powers(pdp, s.channel_memory, period);
    } catch (const std::exception& e) {
      fail(s.sample_period_ns ? "system.sample_period_ns" : "system.channel_memory", e.what());
    }
  }

  if (cfg.realizations < 1) fail("realizations", "must be at least 1");
  if (cfg.eb_n0_db.empty()) fail("eb_n0_db", "must list at least one point");
  for (std::size_t i = 0; i < cfg.eb_n0_db.size(); ++i) {
    if (!std::isfinite(cfg.eb_n0_db[i])) fail("eb_n0_db[" + std::to_string(i) + "]", "must be finite");
  }
  if (cfg.equalizers.empty()) fail("equalizers", "must list at least one equalizer");

  std::set<std::string> labels;
  for (std::size_t i = 0; i < cfg.equalizers.size(); ++i) {
    const EqualizerSpec& e = cfg.equalizers[i];
    const std::string f = "equalizers[" + std::to_string(i) + "].";
    if (e.label.empty()) fail(f + "name", "must not be empty");
    if (!labels.insert(e.label).second) fail(f + "name", "duplicate name '" + e.label + "'");
    if (e.block_length < 1 || !std::has_single_bit(static_cast<unsigned>(e.block_length))) {
      fail(f + "block_length", "must be a power of two");
    }
    if (e.block_length <= s.channel_memory) fail(f + "block_length", "must exceed channel_memory");
    if (e.block_length > s.frame_length) fail(f + "block_length", "must not exceed frame_length");
    if (e.overlap < 0 || e.overlap >= e.block_length) {
      fail(f + "overlap", "must satisfy 0 <= overlap < block_length");
    }
    if (!s.quantize && needs_quantized_input(e.kind)) {
      fail(f + "kind", to_string(e.kind) + " needs quantized observations (system.quantize)");
    }
    if (uses_exact_model(e.kind)) {
      const double obs = static_cast<double>(s.antennas) * e.block_length;
      const double unknowns = static_cast<double>(s.users) * (e.block_length + s.channel_memory);
      if (obs * std::max(obs, unknowns) > kMaxDenseEntries) {
        fail(f + "block_length", to_string(e.kind) + " forms dense matrices; M N_b too large");
      }
    }
    if (is_em(e.kind)) {
      if (e.policy.max_iterations < 1) fail(f + "max_iterations", "must be at least 1");
      if (!(e.policy.rel_tolerance > 0.0)) fail(f + "tolerance", "must be positive");
      if (e.policy.initializer == Initializer::given) {
        fail(f + "initializer", "'given' is only available through the library");
      }
    }
  }

  for (std::size_t i = 0; i < cfg.fixed_iterations.size(); ++i) {
    if (cfg.fixed_iterations[i] < 1) {
      fail("fixed_iterations[" + std::to_string(i) + "]", "must be at least 1");
    }
  }
  const ComplexityGrid& g = cfg.complexity;
  if (g.iterations < 0) fail("complexity.iterations", "must be nonnegative");
  const int overlap = g.overlap.value_or(2 * s.channel_memory);
  if (overlap < 0) fail("complexity.overlap", "must be nonnegative");
  for (std::size_t i = 0; i < g.block_lengths.size(); ++i) {
    const int n = g.block_lengths[i];
    const std::string f = "complexity.block_lengths[" + std::to_string(i) + "]";
    if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n))) fail(f, "must be a power of two");
    else if (n <= s.channel_memory) fail(f, "must exceed channel_memory");
    else if (n <= overlap) fail(f, "must exceed the overlap");
  }
  return issues;
}

}  // namespace onebit
