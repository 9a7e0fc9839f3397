// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <memory>

#include "onebit/channel/channel_taps.hpp"
#include "onebit/channel/operators.hpp"
#include "onebit/equalizers/e_step.hpp"
#include "onebit/equalizers/em.hpp"
#include "onebit/numerics/dft.hpp"
#include "onebit/signal/noise.hpp"
#include "onebit/signal/quantizer.hpp"

namespace {

using namespace onebit;

void BM_MillsRatio(benchmark::State& state) {
  double w = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mills_ratio(w));
    w = w > 5.0 ? -5.0 : w + 0.01;
  }
}
BENCHMARK(BM_MillsRatio);

void BM_BlockDft(benchmark::State& state) {
  const int n_b = static_cast<int>(state.range(0));
  const int streams = 32;
  RngStream rng(1);
  const BlockDft dft(n_b);
  CVector x = draw_awgn(static_cast<Index>(streams) * n_b, 1, 1.0, rng).col(0);
  for (auto _ : state) {
    x = dft.apply(x, streams, DftDirection::forward);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_BlockDft)->Arg(256)->Arg(1024)->Arg(4096);

void BM_EStep(benchmark::State& state) {
  RngStream rng(2);
  const Index n = 32 * 1024;
  const CVector z = draw_awgn(n, 1, 1.0, rng).col(0);
  const CVector r = quantize_1bit(draw_awgn(n, 1, 1.0, rng)).col(0);
  for (auto _ : state) benchmark::DoNotOptimize(e_step(r, z, 1.0));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EStep);

void BM_FrequencyEmIteration(benchmark::State& state) {
  const int n_b = static_cast<int>(state.range(0));
  RngStream rng(3);
  auto op = std::make_shared<const CirculantOperator>(generate_eva_taps(32, 2, 127, std::nullopt, rng), n_b);
  const FrequencyDomainEmKernel kernel(op, 1.0, 10.0);
  const CVector r = quantize_1bit(draw_awgn(32 * n_b, 1, 1.0, rng)).col(0);
  EmPolicy policy;
  policy.max_iterations = 1;
  const CVector xi0 = CVector::Zero(kernel.unknowns());
  for (auto _ : state) benchmark::DoNotOptimize(em_equalize(kernel, r, policy, xi0));
}
BENCHMARK(BM_FrequencyEmIteration)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
