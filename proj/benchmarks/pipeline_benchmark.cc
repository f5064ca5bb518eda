//
// Copyright 2026 The DPSR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <vector>

#include "benchmark/benchmark.h"
#include "dpsr/cf_denoise.h"
#include "dpsr/dp_mechanisms.h"
#include "dpsr/eval.h"
#include "dpsr/experiment.h"
#include "dpsr/lowrank_complete.h"
#include "dpsr/random.h"
#include "dpsr/ratings.h"

namespace dpsr {
namespace {

RatingMatrix Data(int m, int n, double density) {
  return *GenerateSynthetic(
      {.m = m, .n = n, .d_true = 8, .noise_std = 0.1, .density = density,
       .seed = 1});
}

void BM_Stage1(benchmark::State& state) {
  const RatingMatrix r = Data(300, 200, 0.1);
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CalibratedNoiseStage1(r, 1.0, {}, rng));
  }
}
BENCHMARK(BM_Stage1);

void BM_ItemPearson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RatingMatrix r = Data(300, n, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(ItemPearson(r));
}
BENCHMARK(BM_ItemPearson)->Arg(100)->Arg(200)->Arg(400);

void BM_Stage2(benchmark::State& state) {
  const RatingMatrix r = Data(300, 200, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(Stage2Denoise(r, {}));
}
BENCHMARK(BM_Stage2);

void BM_Stage3(benchmark::State& state) {
  const RatingMatrix r = Data(300, 200, 0.1);
  LowRankParams params;
  params.n_iter = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Stage3Complete(r, params));
}
BENCHMARK(BM_Stage3)->Arg(10)->Arg(50);

void BM_FullPipeline(benchmark::State& state) {
  const RatingMatrix r = Data(300, 200, 0.1);
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunDpsrPipeline(r, 1.0, DpsrParams{}, rng));
  }
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond);

void BM_TrainMf(benchmark::State& state) {
  const RatingMatrix r = Data(300, 200, 0.1);
  MfConfig cfg;
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(TrainMf(r, cfg, rng));
  }
}
BENCHMARK(BM_TrainMf)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpsr

BENCHMARK_MAIN();
