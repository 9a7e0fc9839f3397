// SPDX-License-Identifier: Apache-2.0
#include "onebit/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "onebit/channel/operators.hpp"
#include "onebit/cli/config_io.hpp"
#include "onebit/equalizers/e_step.hpp"
#include "onebit/equalizers/em.hpp"
#include "onebit/equalizers/schedule.hpp"
#include "onebit/harness/complexity.hpp"
#include "onebit/harness/experiment.hpp"
#include "onebit/harness/report.hpp"
#include "onebit/oracles/dense_models.hpp"
#include "onebit/oracles/quadrature.hpp"
#include "onebit/signal/noise.hpp"

namespace onebit {
namespace {

using nlohmann::json;

std::optional<ExperimentConfig> resolve_config(const CliOptions& options, std::ostream& err) {
  std::vector<ValidationIssue> issues;
  auto cfg = load_config(options.config_path, issues);
  if (cfg && options.seed) cfg->seed = *options.seed;
  if (options.workers < 1) issues.push_back({"--workers", "must be at least 1"});
  if (!issues.empty()) {
    err << issues_to_json(issues).dump(2) << '\n';
    return std::nullopt;
  }
  return cfg;
}

std::string manifest_text(const std::string& command, const ExperimentConfig& cfg,
                          const std::vector<std::string>& outputs) {
  const json config = config_to_json(cfg);
  const json manifest = {
      {"schema_version", kManifestSchemaVersion},
      {"tool_version", ONEBIT_VERSION},
      {"command", command},
      {"seed", cfg.seed},
      {"config", config},
      {"config_hash", git_blob_hash(config.dump())},
      {"outputs", outputs},
  };
  return manifest.dump(2) + '\n';
}

/// Manifest first, then the result file.
int emit(const CliOptions& options, const std::string& command, const ExperimentConfig& cfg,
         const std::string& result_name, const std::string& result, std::ostream& out) {
  std::filesystem::create_directories(options.out_dir);
  write_file_atomic(options.out_dir / "manifest.json", manifest_text(command, cfg, {result_name}));
  write_file_atomic(options.out_dir / result_name, result);
  out << "wrote " << (options.out_dir / result_name).string() << '\n';
  return kExitOk;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << json{{"errors", json::array({{{"field", ""}, {"message", e.what()}}})}}.dump(2) << '\n';
    return kExitFailure;
  }
}

// ---- selftest -------------------------------------------------------------

ChannelTaps random_taps(int m, int k, int l, RngStream& rng) {
  ChannelTaps taps = ChannelTaps::zeros(m, k, l);
  for (auto& h : taps.taps) h = draw_awgn(m, k, 1.0, rng);
  return taps;
}

CVector random_vector(Index n, RngStream& rng) { return draw_awgn(n, 1, 1.0, rng).col(0); }

SelftestCheck check_e_step(RngStream rng, MillsRatioFn mills) {
  SelftestCheck c{"e_step_quadrature", false, 0.0, 1e-8, 200};
  for (int i = 0; i < c.cases; ++i) {
    const double sigma = 0.2 + 2.8 * rng.uniform();
    const double scale = 30.0 * sigma * rng.uniform();
    const cd z(scale * (2.0 * rng.uniform() - 1.0), scale * (2.0 * rng.uniform() - 1.0));
    const cd r(rng.uniform() < 0.5 ? -1.0 : 1.0, rng.uniform() < 0.5 ? -1.0 : 1.0);
    CVector rv(1), zv(1);
    rv << r;
    zv << z;
    const cd got = e_step(rv, zv, sigma * sigma, mills)[0];
    const cd want = oracle::conditional_mean_quadrature(r, z, sigma * sigma);
    c.worst_error = std::max(c.worst_error, std::abs(got - want));
  }
  c.passed = c.worst_error <= c.tolerance;
  return c;
}

SelftestCheck check_circulant(RngStream rng) {
  SelftestCheck c{"circulant_diagonalization", false, 0.0, 1e-10, 20};
  for (int i = 0; i < c.cases; ++i) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 3);
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const int l = static_cast<int>(rng.next_u64() % 3);
    const int n_b = 8;
    const ChannelTaps taps = random_taps(m, k, l, rng);
    const CMatrix dense = oracle::circulant_matrix(taps, n_b);
    const CirculantOperator op(taps, n_b);
    const CVector x = random_vector(k * n_b, rng);
    c.worst_error = std::max(c.worst_error, (op.apply(x) - dense * x).cwiseAbs().maxCoeff());
  }
  c.passed = c.worst_error <= c.tolerance;
  return c;
}

SelftestCheck check_decomposition(RngStream rng) {
  SelftestCheck c{"interference_decomposition", false, 0.0, 1e-12, 20};
  for (int i = 0; i < c.cases; ++i) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 3);
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const int l = 1 + static_cast<int>(rng.next_u64() % 3);
    const int n_b = 8;
    const ChannelTaps taps = random_taps(m, k, l, rng);
    const CVector xi = random_vector(k * (n_b + l), rng);
    const CVector xc = xi.head(k * n_b);
    const CMatrix x_c = xc.reshaped(k, n_b);
    const CMatrix x_in = xi.tail(k * l).reshaped(k, l);
    const CVector lhs = toeplitz_apply(taps, xi, n_b);
    const CVector rhs = oracle::circulant_matrix(taps, n_b) * xc + interference_term(taps, x_in, x_c);
    c.worst_error = std::max(c.worst_error, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  c.passed = c.worst_error <= c.tolerance;
  return c;
}

SelftestCheck check_schedule(RngStream rng) {
  SelftestCheck c{"schedule_coverage", false, 0.0, 0.0, 200};
  for (int i = 0; i < c.cases; ++i) {
    const Index n_b = 1 + static_cast<Index>(rng.next_u64() % 64);
    const Index overlap = static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(n_b));
    const Index t = n_b + static_cast<Index>(rng.next_u64() % 300);
    std::vector<int> hits(static_cast<std::size_t>(t), 0);
    for (const BlockWindow& w : overlap_discard_schedule(t, n_b, overlap)) {
      for (Index j = w.start + w.keep_from; j < w.start + w.keep_to; ++j) ++hits[static_cast<std::size_t>(j)];
    }
    const auto bad = std::count_if(hits.begin(), hits.end(), [](int h) { return h != 1; });
    c.worst_error = std::max(c.worst_error, static_cast<double>(bad));
  }
  c.passed = c.worst_error <= c.tolerance;
  return c;
}

SelftestCheck check_m_step(RngStream rng) {
  SelftestCheck c{"frequency_m_step", false, 0.0, 1e-8, 20};
  for (int i = 0; i < c.cases; ++i) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 3);
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const int l = static_cast<int>(rng.next_u64() % 3);
    const int n_b = 8;
    const ChannelTaps taps = random_taps(m, k, l, rng);
    const double nv = 0.1 + rng.uniform();
    const double sv = 0.1 + 5.0 * rng.uniform();
    const CVector y = random_vector(m * n_b, rng);
    const CirculantOperator op(taps, n_b);
    const CVector got = em_m_step_freq(op, y, nv, sv);
    const CVector want = oracle::regularized_solve(oracle::circulant_matrix(taps, n_b), y, nv, sv);
    c.worst_error = std::max(c.worst_error, (got - want).norm() / std::max(want.norm(), 1e-300));
  }
  c.passed = c.worst_error <= c.tolerance;
  return c;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void configure_logging_from_env() {
  const char* level = std::getenv("ONEBIT_EQ_LOG");
  if (level == nullptr || *level == '\0') return;
  const auto parsed = spdlog::level::from_str(level);
  // from_str maps unknown names to off; only accept "off" when asked for.
  if (parsed == spdlog::level::off && std::string(level) != "off") {
    spdlog::warn("ignoring unknown ONEBIT_EQ_LOG level '{}'", level);
    return;
  }
  spdlog::set_level(parsed);
}

int cmd_sweep(const CliOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = resolve_config(options, err);
    if (!cfg) return kExitInvalidConfig;
    spdlog::info("sweep: {} realizations, {} Eb/N0 points, {} equalizers", cfg->realizations,
                 cfg->eb_n0_db.size(), cfg->equalizers.size());
    const auto points = run_ber_sweep(*cfg, {options.workers});
    std::ostringstream csv;
    write_ber_csv(csv, points);
    return emit(options, "sweep", *cfg, "ber.csv", csv.str(), out);
  });
}

int cmd_fixed_iters(const CliOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = resolve_config(options, err);
    if (!cfg) return kExitInvalidConfig;
    spdlog::info("fixed-iters: I_max in {} values", cfg->fixed_iterations.size());
    const auto points = run_fixed_iteration_study(*cfg, {options.workers});
    std::ostringstream csv;
    write_ber_csv(csv, points);
    return emit(options, "fixed-iters", *cfg, "fixed_iters.csv", csv.str(), out);
  });
}

int cmd_complexity(const CliOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = resolve_config(options, err);
    if (!cfg) return kExitInvalidConfig;
    const SystemConfig& s = cfg->system;
    std::vector<ComplexityRow> rows;
    for (int n_b : cfg->complexity.block_lengths) {
      ComplexityInputs in;
      in.users = s.users;
      in.antennas = s.antennas;
      in.memory = s.channel_memory;
      in.block_length = n_b;
      in.overlap = cfg->complexity.overlap.value_or(2 * s.channel_memory);
      in.frame_length = static_cast<std::uint64_t>(s.frame_length);
      in.iterations = static_cast<std::uint64_t>(cfg->complexity.iterations);
      rows.push_back({in, complexity_report(in)});
    }
    std::ostringstream csv;
    write_complexity_csv(csv, rows);
    return emit(options, "complexity", *cfg, "complexity.csv", csv.str(), out);
  });
}

bool SelftestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.passed; });
}

std::string SelftestReport::text() const {
  std::string s;
  for (const SelftestCheck& c : checks) {
    s += fmt::format("{} {} cases={} worst={:.3e} tol={:.1e}\n", c.passed ? "PASS" : "FAIL", c.name,
                     c.cases, c.worst_error, c.tolerance);
  }
  return s;
}

std::string SelftestReport::digest() const { return git_blob_hash(text()); }

SelftestReport run_selftest(const SelftestOptions& options) {
  const RngStream root(options.seed);
  SelftestReport report;
  report.checks.push_back(check_e_step(root.split(0), options.mills));
  report.checks.push_back(check_circulant(root.split(1)));
  report.checks.push_back(check_decomposition(root.split(2)));
  report.checks.push_back(check_schedule(root.split(3)));
  report.checks.push_back(check_m_step(root.split(4)));
  return report;
}

int cmd_selftest(const SelftestOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SelftestReport report = run_selftest(options);
    out << report.text() << "digest " << report.digest() << '\n';
    if (!report.passed()) {
      for (const SelftestCheck& c : report.checks) {
        if (!c.passed) err << "selftest failed: " << c.name << '\n';
      }
      return kExitFailure;
    }
    return kExitOk;
  });
}

}  // namespace onebit
