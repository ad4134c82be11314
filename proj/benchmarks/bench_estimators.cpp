// Copyright 2026 The shadowtomo Authors.
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

#include "shadowtomo/ensembles.hpp"
#include "shadowtomo/estimators.hpp"
#include "shadowtomo/measurement.hpp"

namespace {

using namespace shadowtomo;

std::vector<MeasurementRecord> records(int dim, int settings) {
  return run_plan(DensityMatrix::basis_state(dim, 0),
                  MeasurementPlan{settings, 1, GlobalHaar{dim}}, RngStream(1, 0, 0));
}

void BM_GlobalHaar(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng(1, 0, i++);
    benchmark::DoNotOptimize(sample_global_haar(dim, rng));
  }
}
BENCHMARK(BM_GlobalHaar)->Arg(4)->Arg(16)->Arg(32);

void BM_FrameBuild(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto recs = records(dim, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(FrameOperator::build(recs));
}
BENCHMARK(BM_FrameBuild)->Args({8, 128})->Args({16, 256})->Args({32, 128});

void BM_LsFactor(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto frame = FrameOperator::build(records(dim, dim));
  for (auto _ : state) benchmark::DoNotOptimize(LsSolver(frame).rank());
}
BENCHMARK(BM_LsFactor)->Arg(8)->Arg(16);

void BM_RlsFactor(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto frame = FrameOperator::build(records(dim, dim));
  const Matrix partial = Matrix::Identity(dim, dim) / dim;
  for (auto _ : state) benchmark::DoNotOptimize(RlsSolver(frame, 0.1).apply(partial));
}
BENCHMARK(BM_RlsFactor)->Arg(8)->Arg(16);

void BM_CsShadow(benchmark::State& state) {
  const auto recs = records(static_cast<int>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cs_shadow(recs[i++ % recs.size()]));
}
BENCHMARK(BM_CsShadow)->Arg(8)->Arg(32);

void BM_EstimateAverage(benchmark::State& state) {
  const auto recs = records(8, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_average(recs, RidgeRegression{0.1}));
  }
}
BENCHMARK(BM_EstimateAverage)->Arg(16)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
