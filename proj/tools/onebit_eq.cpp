// SPDX-License-Identifier: Apache-2.0
// onebit_eq: BER sweeps, fixed-iteration studies, complexity tables and
// selftests for 1-bit massive MIMO equalizers.
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "onebit/cli/commands.hpp"

int main(int argc, char** argv) {
  onebit::configure_logging_from_env();

  CLI::App app{"1-bit massive MIMO equalization simulator", "onebit_eq"};
  app.set_version_flag("--version", ONEBIT_VERSION);
  app.require_subcommand(1);

  onebit::CliOptions options;
  std::uint64_t seed = 0;
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config_path, "experiment config (JSON) or run manifest")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", options.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", seed, "overrides the config seed");
    cmd->add_option("--workers", options.workers, "parallel realizations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };

  auto* sweep = app.add_subcommand("sweep", "BER versus Eb/N0 for every configured equalizer");
  add_run_flags(sweep);
  auto* fixed = app.add_subcommand("fixed-iters", "BER with EM stopped after fixed iteration counts");
  add_run_flags(fixed);
  auto* complexity = app.add_subcommand("complexity", "multiplication counts over an N_b grid");
  add_run_flags(complexity);

  onebit::SelftestOptions selftest_options;
  auto* selftest = app.add_subcommand("selftest", "oracle checks at small sizes");
  selftest->add_option("--seed", selftest_options.seed, "seed for the random cases")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  for (auto* cmd : {sweep, fixed, complexity}) {
    if (cmd->parsed() && cmd->count("--seed") > 0) options.seed = seed;
  }

  if (sweep->parsed()) return onebit::cmd_sweep(options, std::cout, std::cerr);
  if (fixed->parsed()) return onebit::cmd_fixed_iters(options, std::cout, std::cerr);
  if (complexity->parsed()) return onebit::cmd_complexity(options, std::cout, std::cerr);
  return onebit::cmd_selftest(selftest_options, std::cout, std::cerr);
}
