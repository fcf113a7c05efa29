/* Copyright 2026 The brownmeasure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

// Serial reference against the OpenMP kernels. Arg 0 is serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "brownmeasure/density.hpp"
#include "brownmeasure/matsim.hpp"
#include "brownmeasure/quadrature.hpp"
#include "brownmeasure/region.hpp"
#include "brownmeasure/shadow.hpp"

using namespace bm;

static Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

static void BM_SampleBoundary(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sample_boundary(3.0, 4096, mode(st)));
}
BENCHMARK(BM_SampleBoundary)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_DensityGrid(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(density_grid(2.0, 4096, Route::phi_jacobian, mode(st)));
}
BENCHMARK(BM_DensityGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Pushforward(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(pushforward_check(7.0, 2048, mode(st)));
}
BENCHMARK(BM_Pushforward)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_CdfTable(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(CdfTable([](double p) { return biane_density(2.0, p); }, phi_max(2.0), true, 4096, mode(st)));
}
BENCHMARK(BM_CdfTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SimulateCloud(benchmark::State& st) {
  SimConfig cfg;
  cfg.N = 128;
  cfg.t = 2.0;
  cfg.steps = 200;
  cfg.samples = 4;
  for (auto _ : st) benchmark::DoNotOptimize(simulate_cloud(cfg, mode(st)));
}
BENCHMARK(BM_SimulateCloud)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
