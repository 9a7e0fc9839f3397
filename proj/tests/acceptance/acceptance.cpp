// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. The process exits 0 once
// every selected criterion has been evaluated; the verdicts are in the
// printed lines and the report file.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "onebit/channel/operators.hpp"
#include "onebit/cli/commands.hpp"
#include "onebit/equalizers/e_step.hpp"
#include "onebit/equalizers/em.hpp"
#include "onebit/equalizers/schedule.hpp"
#include "onebit/harness/experiment.hpp"
#include "onebit/oracles/dense_models.hpp"
#include "onebit/oracles/quadrature.hpp"
#include "onebit/signal/constellation.hpp"
#include "onebit/signal/noise.hpp"
#include "onebit/signal/quantizer.hpp"

namespace {

using namespace onebit;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool passed = true;
  std::vector<std::string> details;

  void check(bool ok, std::string what) {
    passed = passed && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int uniform_int(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

ChannelTaps random_taps(int m, int k, int l, RngStream& rng) {
  ChannelTaps taps = ChannelTaps::zeros(m, k, l);
  for (auto& h : taps.taps) h = draw_awgn(m, k, 1.0, rng);
  return taps;
}

CVector random_vector(Index n, RngStream& rng) { return draw_awgn(n, 1, 1.0, rng).col(0); }

double rel_error(const CMatrix& got, const CMatrix& want) {
  return (got - want).cwiseAbs().maxCoeff() / std::max(1.0, want.cwiseAbs().maxCoeff());
}

const BerPoint& find_point(const std::vector<BerPoint>& rows, const std::string& eq, double db) {
  for (const auto& r : rows) {
    if (r.equalizer == eq && r.eb_n0_db == db) return r;
  }
  throw std::runtime_error("missing result row " + eq);
}

std::string ber_line(const BerPoint& p) {
  return fmt::format("{} @ {} dB: BER {:.4g} ({}/{}), mean iters {:.3g}", p.equalizer, p.eb_n0_db,
                     p.ber, p.bit_errors, p.bits, p.mean_iterations);
}

EqualizerSpec em_m(std::string label, int n_b, int overlap, Initializer init = Initializer::wf_quantized) {
  EqualizerSpec e;
  e.label = std::move(label);
  e.kind = EqualizerKind::em_m;
  e.block_length = n_b;
  e.overlap = overlap;
  e.policy.initializer = init;
  return e;
}

ExperimentConfig desk_system(int memory, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.system.users = 2;
  cfg.system.antennas = 32;
  cfg.system.channel_memory = memory;
  cfg.system.frame_length = 10000;
  cfg.system.noise_variance = 1.0;
  cfg.realizations = 20;
  cfg.seed = seed;
  return cfg;
}

// 1. Closed-form E-step against quadrature of the truncated Gaussian mean.
Verdict criterion_e_step() {
  Verdict v;
  const auto t0 = Clock::now();
  RngStream rng(101);
  double worst = 0.0;
  double max_ratio = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double sigma = std::exp(rng.uniform() * 4.0 - 2.0);
    const double nv = sigma * sigma;
    const cd z((2.0 * rng.uniform() - 1.0) * 30.0 * sigma, (2.0 * rng.uniform() - 1.0) * 30.0 * sigma);
    const cd r = quantize_1bit(cd(rng.normal(), rng.normal()));
    CVector rv(1), zv(1);
    rv << r;
    zv << z;
    const cd got = e_step(rv, zv, nv)(0);
    worst = std::max(worst, std::abs(got - oracle::conditional_mean_quadrature(r, z, nv)));
    max_ratio = std::max({max_ratio, std::abs(z.real()) / sigma, std::abs(z.imag()) / sigma});
  }
  const double elapsed = seconds_since(t0);
  v.check(worst <= 1e-8, fmt::format("1000 triples, worst |error| {:.3g} <= 1e-8", worst));
  v.check(max_ratio > 25.0, fmt::format("largest |z|/sigma covered {:.3g}", max_ratio));
  v.check(elapsed < 10.0, fmt::format("runtime {:.2f} s < 10 s", elapsed));
  return v;
}

// 2. Diagonalization, decomposition and M-step identities at small scale.
Verdict criterion_identities() {
  Verdict v;
  const auto t0 = Clock::now();
  RngStream rng(202);
  double worst_a = 0.0;
  double worst_b = 0.0;
  double worst_c = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const int m = uniform_int(rng, 1, 4);
    const int k = uniform_int(rng, 1, 4);
    const int l = uniform_int(rng, 0, 3);
    const int n_b = 1 << uniform_int(rng, 2, 4);  // 4..16, always > L
    const ChannelTaps taps = random_taps(m, k, l, rng);

    const CMatrix f = oracle::dft_matrix(n_b);
    const CMatrix factored = oracle::kron_identity(f.adjoint(), m) *
                             oracle::block_diagonal(frequency_response(taps, n_b).bins) *
                             oracle::kron_identity(f, k);
    worst_a = std::max(worst_a, rel_error(oracle::circulant_matrix(taps, n_b), factored));

    const CMatrix x_c = draw_awgn(k, n_b, 1.0, rng);
    const CMatrix x_in = draw_awgn(k, l, 1.0, rng);
    CVector xi(static_cast<Index>(k) * (n_b + l));
    xi << CVector(x_c.reshaped()), CVector(x_in.reshaped());
    const CVector lhs = oracle::toeplitz_matrix(taps, n_b) * xi;
    const CVector rhs = oracle::circulant_matrix(taps, n_b) * CVector(x_c.reshaped()) +
                        interference_term(taps, x_in, x_c);
    worst_b = std::max(worst_b, rel_error(lhs, rhs));

    const double nv = 0.1 + rng.uniform();
    const double sv = 0.1 + 3.0 * rng.uniform();
    const CirculantOperator op(taps, n_b);
    const CVector y = random_vector(static_cast<Index>(m) * n_b, rng);
    worst_c = std::max(worst_c, rel_error(em_m_step_freq(op, y, nv, sv),
                                          oracle::regularized_solve(oracle::circulant_matrix(taps, n_b), y,
                                                                    nv, sv)));
  }
  const double elapsed = seconds_since(t0);
  v.check(worst_a <= 1e-10, fmt::format("(a) circulant = F^H blockdiag(H_f) F, worst {:.3g} <= 1e-10", worst_a));
  v.check(worst_b <= 1e-12, fmt::format("(b) Toeplitz = circulant + interference, worst {:.3g} <= 1e-12", worst_b));
  v.check(worst_c <= 1e-8, fmt::format("(c) frequency M-step = dense M-step, worst {:.3g} <= 1e-8", worst_c));
  v.check(elapsed < 30.0, fmt::format("runtime {:.2f} s < 30 s", elapsed));
  return v;
}

// 3. Instrumented counters and the complexity table.
Verdict criterion_complexity(const std::filesystem::path& scratch) {
  Verdict v;
  RngStream rng(303);
  for (int trial = 0; trial < 5; ++trial) {
    const int m = uniform_int(rng, 1, 8);
    const int k = uniform_int(rng, 1, 3);
    const int l = uniform_int(rng, 0, 4);
    const int n_b = l + uniform_int(rng, 1, 12);
    const int iterations = uniform_int(rng, 1, 7);
    const auto kernel = TimeDomainEmKernel::exact(random_taps(m, k, l, rng), n_b, 1.0, 2.0);
    EmPolicy policy;
    policy.max_iterations = iterations;
    policy.early_stop = false;
    const CVector r = quantize_1bit(CMatrix(random_vector(static_cast<Index>(m) * n_b, rng))).col(0);
    const auto est = em_equalize(kernel, r, policy, CVector::Zero(kernel.unknowns()));
    const std::uint64_t p = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n_b + l);
    const std::uint64_t mn = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n_b);
    const std::uint64_t want = static_cast<std::uint64_t>(iterations) * (mn * (p + 1) + p * mn);
    v.check(est.multiply_count == want,
            fmt::format("M={} K={} L={} N_b={} I={}: counted {} vs per-block formula {}", m, k, l, n_b,
                        iterations, est.multiply_count, want));
  }

  // Complexity table against a direct evaluation.
  const std::filesystem::path cfg_path = scratch / "complexity.json";
  std::ofstream(cfg_path) << R"({
    "system": {"users": 2, "antennas": 32, "channel_memory": 127, "frame_length": 50000},
    "equalizers": [{"kind": "EM_M", "block_length": 1024, "overlap": 254}],
    "eb_n0_db": [0],
    "complexity": {"block_lengths": [256, 512, 1024, 2048, 4096], "iterations": 8, "overlap": 254}
  })";
  std::ostringstream out, err;
  const int code = cmd_complexity({cfg_path, scratch, std::nullopt, 1}, out, err);
  v.check(code == kExitOk, fmt::format("complexity command exit code {}", code));
  std::ifstream csv(scratch / "complexity.csv");
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::uint64_t> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(std::stoull(cell));
    if (f.size() != 13) {
      v.check(false, "malformed complexity row: " + line);
      continue;
    }
    const std::uint64_t k = 2, m = 32, l = 127, n_b = f[0], lp = f[1], it = f[2], tc = f[3];
    const std::uint64_t log2n = static_cast<std::uint64_t>(std::llround(std::log2(static_cast<double>(n_b))));
    const std::uint64_t p = k * (n_b + l);
    const std::uint64_t b = (tc + n_b - 1) / n_b;
    const std::uint64_t bp = (tc + n_b - lp - 1) / (n_b - lp);
    const std::uint64_t t_g = p * p * p + p * p * m * n_b;
    const std::uint64_t t_block = m * n_b * (p + 1) + p * m * n_b;
    const std::uint64_t t_gf = (k * m * log2n + 2 * k * k * m + k * k * k) * n_b;
    const std::uint64_t t_block_f = 2 * ((m + k) * log2n + k * m) * n_b;
    const std::vector<std::uint64_t> want{n_b, lp,      it,      tc, p,         b,
                                          t_g, t_block, b * it * t_block + t_g, bp, t_gf,
                                          t_block_f,    bp * it * t_block_f + t_gf};
    v.check(f == want, fmt::format("N_b={}: T_tot={} T_tot_f={} match direct evaluation", n_b, f[8], f[12]));
    ++rows;
  }
  v.check(rows == 5, fmt::format("{} table rows", rows));
  return v;
}

// 4. Desk-scale BER curves.
Verdict criterion_ber_curves(int workers, int realizations) {
  Verdict v;
  ExperimentConfig cfg = desk_system(127, 2019);
  cfg.realizations = realizations;
  EqualizerSpec wf;
  wf.label = "WF_MQ";
  wf.kind = EqualizerKind::wf_mq;
  wf.block_length = 1024;
  wf.overlap = 254;
  cfg.equalizers = {wf, em_m("EM_M", 1024, 254), em_m("EM_M_IG_WF_M", 1024, 254, Initializer::wf_unquantized)};
  cfg.eb_n0_db = {0, 3, 6, 9, 12, 15};
  const auto t0 = Clock::now();
  const auto rows = run_ber_sweep(cfg, {workers});
  for (const auto& r : rows) v.details.push_back("     " + ber_line(r));

  const auto& wf15 = find_point(rows, "WF_MQ", 15);
  v.check(wf15.ber >= 0.005 && wf15.ber <= 0.015,
          fmt::format("WF_quantized floor at 15 dB {:.4g} in [0.005, 0.015]", wf15.ber));
  const auto& em0 = find_point(rows, "EM_M", 0);
  v.check(em0.ber >= 0.018 && em0.ber <= 0.038, fmt::format("EM_M at 0 dB {:.4g} in [0.018, 0.038]", em0.ber));
  const auto& em12 = find_point(rows, "EM_M", 12);
  v.check(em12.ber <= 2e-3, fmt::format("EM_M at 12 dB {:.4g} <= 2e-3", em12.ber));
  for (double db : cfg.eb_n0_db) {
    const double em = find_point(rows, "EM_M", db).ber;
    const double lin = find_point(rows, "WF_MQ", db).ber;
    v.check(em <= lin, fmt::format("ordering at {} dB: EM_M {:.4g} <= WF_quantized {:.4g}", db, em, lin));
  }
  for (double db : {12.0, 15.0}) {
    const double good = find_point(rows, "EM_M", db).ber;
    const double bad = find_point(rows, "EM_M_IG_WF_M", db).ber;
    const double ratio = good > 0.0 ? bad / good : (bad > 0.0 ? INFINITY : 0.0);
    v.check(ratio >= 10.0, fmt::format("initializer effect at {} dB: {:.4g} / {:.4g} = {:.3g} >= 10", db, bad,
                                       good, ratio));
  }
  v.details.push_back(fmt::format("     runtime {:.0f} s, {} realizations", seconds_since(t0), realizations));
  return v;
}

// 5. Fixed-iteration study at 9 dB.
Verdict criterion_fixed_iterations(int workers, int realizations) {
  Verdict v;
  ExperimentConfig cfg = desk_system(127, 2020);
  cfg.realizations = realizations;
  cfg.equalizers = {em_m("EM_M", 1024, 254)};
  cfg.eb_n0_db = {9};
  cfg.fixed_iterations = {1, 2, 4, 8};
  const auto t0 = Clock::now();
  const auto rows = run_fixed_iteration_study(cfg, {workers});
  std::vector<double> ber;
  for (int i : cfg.fixed_iterations) {
    const auto& p = find_point(rows, "EM_M@I=" + std::to_string(i), 9);
    v.details.push_back("     " + ber_line(p));
    ber.push_back(p.ber);
  }
  for (std::size_t i = 1; i < ber.size(); ++i) {
    v.check(ber[i] < ber[i - 1], fmt::format("BER(I_max={}) {:.4g} < BER(I_max={}) {:.4g}", cfg.fixed_iterations[i],
                                             ber[i], cfg.fixed_iterations[i - 1], ber[i - 1]));
  }
  v.details.push_back(fmt::format("     runtime {:.0f} s", seconds_since(t0)));
  return v;
}

// 6. Block length / overlap guidance with L + 1 = 32.
Verdict criterion_guidance(int workers, int realizations) {
  Verdict v;
  const int l = 31;
  ExperimentConfig cfg = desk_system(l, 2021);
  cfg.realizations = realizations;
  for (int n_b : {128, 256}) {
    for (int mult : {1, 2, 3}) {
      cfg.equalizers.push_back(em_m(fmt::format("EM_M_N{}_L{}", n_b, mult), n_b, mult * l));
    }
  }
  cfg.eb_n0_db = {9};
  const auto t0 = Clock::now();
  const auto rows = run_ber_sweep(cfg, {workers});
  double best = 1.0;
  std::string best_label;
  for (const auto& r : rows) {
    v.details.push_back("     " + ber_line(r));
    if (r.ber < best) {
      best = r.ber;
      best_label = r.equalizer;
    }
  }
  const double chosen = find_point(rows, "EM_M_N128_L2", 9).ber;
  v.check(chosen <= 1.5 * best, fmt::format("N_b=128, L'=2L BER {:.4g} within 1.5x of best ({} {:.4g}); ratio {:.3g}",
                                            chosen, best_label, best, best > 0 ? chosen / best : 0.0));
  v.details.push_back(fmt::format("     runtime {:.0f} s", seconds_since(t0)));
  return v;
}

// 7. Randomized property suites, 1000 cases each.
Verdict criterion_properties(int workers) {
  Verdict v;
  RngStream rng(707);
  const int cases = 1000;

  bool alphabet = true;
  for (int i = 0; i < cases; ++i) {
    const CMatrix y = draw_awgn(3, 5, std::exp(rng.normal() * 3.0), rng);
    const CMatrix r = quantize_1bit(y);
    alphabet = alphabet && is_quantized(r) && quantize_1bit(r) == r;
    for (Index j = 0; j < y.size(); ++j) {
      alphabet = alphabet && (r(j).real() > 0) == (y(j).real() > 0) && (r(j).imag() > 0) == (y(j).imag() > 0);
    }
  }
  v.check(alphabet, fmt::format("quantizer alphabet and sign agreement, {} cases", cases));

  const Qam16 qam(1.0);
  const double step = 2.0 * qam.scale();
  bool gray = true;
  for (int i = 0; i < cases; ++i) {
    const auto a = static_cast<std::uint8_t>(rng.next_u64() % 16);
    for (std::uint8_t b = 0; b < 16; ++b) {
      const double d = std::abs(qam.point(a) - qam.point(b));
      if (std::abs(d - step) < 1e-9) gray = gray && std::popcount(static_cast<unsigned>(a ^ b)) == 1;
    }
  }
  v.check(gray, fmt::format("Gray property for nearest neighbours, {} cases", cases));

  bool coverage = true;
  for (int i = 0; i < cases; ++i) {
    const int n_b = uniform_int(rng, 1, 128);
    const int overlap = uniform_int(rng, 0, n_b - 1);
    const int frame = uniform_int(rng, n_b, 2000);
    std::vector<int> kept(static_cast<std::size_t>(frame), 0);
    for (const auto& w : overlap_discard_schedule(frame, n_b, overlap)) {
      for (Index t = w.start + w.keep_from; t < w.start + w.keep_to; ++t) ++kept[static_cast<std::size_t>(t)];
    }
    coverage = coverage && std::all_of(kept.begin(), kept.end(), [](int c) { return c == 1; });
  }
  v.check(coverage, fmt::format("schedule coverage and uniqueness, {} cases", cases));

  bool determinism = true;
  for (int i = 0; i < cases && determinism; ++i) {
    ExperimentConfig cfg;
    cfg.system.users = uniform_int(rng, 1, 2);
    cfg.system.antennas = uniform_int(rng, 1, 4);
    cfg.system.channel_memory = uniform_int(rng, 1, 3);
    cfg.system.frame_length = uniform_int(rng, 16, 48);
    const int overlap = uniform_int(rng, 0, 2 * cfg.system.channel_memory);
    EqualizerSpec wf;
    wf.label = "WF_MQ";
    wf.kind = EqualizerKind::wf_mq;
    wf.block_length = 16;
    wf.overlap = overlap;
    EqualizerSpec em = em_m("EM_M", 16, overlap);
    em.policy.max_iterations = 20;
    cfg.equalizers = {wf, em};
    cfg.realizations = uniform_int(rng, 2, 5);
    cfg.eb_n0_db = {static_cast<double>(uniform_int(rng, -2, 15))};
    cfg.seed = rng.next_u64();
    determinism = run_ber_sweep(cfg, {1}) == run_ber_sweep(cfg, {std::max(2, workers)});
  }
  v.check(determinism, fmt::format("identical results across worker counts, {} cases", cases));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::filesystem::path report_path = "acceptance_report.txt";
  std::vector<int> only;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int realizations = 20;
  app.add_option("--report", report_path, "Report file");
  app.add_option("--only", only, "Criteria to run (default: all)")->check(CLI::Range(1, 7));
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--realizations", realizations, "Realizations for the BER criteria (gate: 20)")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const std::set<int> selected = only.empty() ? std::set<int>{1, 2, 3, 4, 5, 6, 7}
                                              : std::set<int>(only.begin(), only.end());
  const std::filesystem::path scratch = std::filesystem::temp_directory_path() / "onebit_acceptance";
  std::filesystem::create_directories(scratch);

  const std::map<int, std::pair<std::string, std::function<Verdict()>>> criteria{
      {1, {"E-step matches quadrature oracle", criterion_e_step}},
      {2, {"algebraic identities at small scale", criterion_identities}},
      {3, {"complexity counters and table", [&] { return criterion_complexity(scratch); }}},
      {4, {"desk-scale BER curves", [&] { return criterion_ber_curves(workers, realizations); }}},
      {5, {"fixed-iteration ordering at 9 dB", [&] { return criterion_fixed_iterations(workers, realizations); }}},
      {6, {"block length / overlap guidance", [&] { return criterion_guidance(workers, realizations); }}},
      {7, {"randomized property suites", [&] { return criterion_properties(workers); }}},
  };

  std::ofstream report(report_path);
  auto emit = [&](const std::string& line) {
    std::cout << line << '\n' << std::flush;
    report << line << '\n' << std::flush;
  };
  if (realizations != 20) emit(fmt::format("note: {} realizations instead of 20; not a gate run", realizations));
  int passed = 0;
  for (const auto& [id, entry] : criteria) {
    if (!selected.contains(id)) continue;
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = entry.second();
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    emit(fmt::format("[{}] criterion {}: {} ({:.1f} s)", v.passed ? "PASS" : "FAIL", id, entry.first,
                     seconds_since(t0)));
    for (const auto& d : v.details) emit("       " + d);
    passed += v.passed ? 1 : 0;
  }
  emit(fmt::format("summary: {}/{} criteria passed", passed, selected.size()));
  std::filesystem::remove_all(scratch);
  return 0;
}
