// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "onebit/numerics/special_functions.hpp"

namespace onebit {

inline constexpr int kManifestSchemaVersion = 1;

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

struct CliOptions {
  std::filesystem::path config_path;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;  ///< overrides the config
  int workers = 1;
};

/// BER sweep: writes manifest.json, then ber.csv, into out_dir.
int cmd_sweep(const CliOptions& options, std::ostream& out, std::ostream& err);
/// Fixed-iteration study: manifest.json, then fixed_iters.csv.
int cmd_fixed_iters(const CliOptions& options, std::ostream& out, std::ostream& err);
/// Complexity table over the configured N_b grid: manifest.json, then
/// complexity.csv.
int cmd_complexity(const CliOptions& options, std::ostream& out, std::ostream& err);

struct SelftestOptions {
  std::uint64_t seed = 1;
  /// Mills-ratio evaluator under test; swap in a faulty one for a negative
  /// control.
  MillsRatioFn mills = mills_ratio;
};

struct SelftestCheck {
  std::string name;
  bool passed = false;
  double worst_error = 0.0;
  double tolerance = 0.0;
  int cases = 0;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;

  [[nodiscard]] bool passed() const;
  /// One line per check.
  [[nodiscard]] std::string text() const;
  /// git_blob_hash of text().
  [[nodiscard]] std::string digest() const;
};

/// Small-size oracle checks: e_step_quadrature, circulant_diagonalization,
/// interference_decomposition, schedule_coverage, frequency_m_step.
[[nodiscard]] SelftestReport run_selftest(const SelftestOptions& options = {});

/// Prints the report; exit 0 iff every check passed.
int cmd_selftest(const SelftestOptions& options, std::ostream& out, std::ostream& err);

/// Sets the spdlog level from ONEBIT_EQ_LOG (trace, debug, info, warn,
/// error, critical, off). Unset leaves the default (info).
void configure_logging_from_env();

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace onebit
