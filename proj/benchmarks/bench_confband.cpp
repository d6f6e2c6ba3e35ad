// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "confband/approx.hpp"
#include "confband/chain.hpp"
#include "confband/oracle.hpp"
#include "confband/regband.hpp"

namespace {

using namespace confband;

SeriesMatrix instance(std::size_t n, std::size_t m, Flavor flavor) {
  InstanceSpec spec;
  spec.n = n;
  spec.m = m;
  spec.flavor = flavor;
  spec.resolution = 0.01;
  spec.outliers = n / 10;
  spec.rng_seed = 42;
  return generate(spec);
}

void BM_MaxFlow(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = instance(n, n / 4, Flavor::random_walk);
  const auto grid = build_value_grid(matrix);
  for (auto _ : state) {
    auto net = build_network(grid, matrix, 0.5);
    benchmark::DoNotOptimize(net.network.max_flow());
  }
}
BENCHMARK(BM_MaxFlow)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_SolveRegband(benchmark::State& state) {
  const auto matrix = instance(256, 64, Flavor::clustered);
  SolveOptions options;
  options.arithmetic = state.range(0) ? Arithmetic::exact : Arithmetic::floating;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_regband(matrix, 0.5, options).objective);
  }
  state.SetLabel(state.range(0) ? "exact" : "floating");
}
BENCHMARK(BM_SolveRegband)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EnumerateChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = instance(n, n / 4, Flavor::clustered);
  ChainOptions options;
  options.parallel = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_chain(matrix, options).size());
  }
}
BENCHMARK(BM_EnumerateChain)
    ->ArgsProduct({{128, 256, 512}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_FindSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = instance(n, n / 4, Flavor::clustered);
  const auto chain = enumerate_chain(matrix);
  const std::size_t k = k_from_fraction(0.9, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_sum(matrix, k, chain).band.area);
  }
}
BENCHMARK(BM_FindSum)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_Peel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = instance(n, n / 4, Flavor::clustered);
  const std::size_t k = k_from_fraction(0.9, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(peel(matrix, k).band.area);
  }
}
BENCHMARK(BM_Peel)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_FindInf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = instance(n, n / 4, Flavor::clustered);
  const std::size_t k = k_from_fraction(0.9, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_inf(matrix, k).band.width);
  }
}
BENCHMARK(BM_FindInf)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
