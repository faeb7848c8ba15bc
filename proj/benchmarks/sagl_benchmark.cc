/* Copyright 2026 The SAGL Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include <vector>

#include "sagl/entmax.h"
#include "sagl/graph_model.h"
#include "sagl/model.h"
#include "sagl/rng.h"
#include "sagl/synthetic.h"
#include "sagl/trainer.h"

namespace sagl {
namespace {

void BM_Entmax(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Alpha alpha(static_cast<double>(state.range(1)) / 10.0);
  Rng rng(1);
  const Matrix scores = RandNormal(rng, 1, n, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Entmax(scores.row(0), alpha));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Entmax)->ArgsProduct({{16, 256, 4096}, {12, 15, 20}});

ViewParams BenchParams(std::size_t d, std::size_t c) {
  TrainConfig config;
  config.num_classes = c;
  const std::vector<std::size_t> dims{d};
  return InitModel(dims, config).views[0];
}

void BM_ForwardView(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ViewParams p = BenchParams(64, 10);
  Rng rng(2);
  const Matrix h = RandNormal(rng, n, 64, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ForwardView(h, p, Alpha(1.5), Variant::kFull));
  }
}
BENCHMARK(BM_ForwardView)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_BackwardView(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ViewParams p = BenchParams(64, 10);
  Rng rng(3);
  const Matrix h = RandNormal(rng, n, 64, 1.0);
  const ViewForwardTrace trace = ForwardView(h, p, Alpha(1.5), Variant::kFull);
  const Matrix dq = RandNormal(rng, n, 10, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BackwardView(trace, dq, p));
  }
}
BENCHMARK(BM_BackwardView)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_TrainEpoch(benchmark::State& state) {
  SyntheticSpec spec;
  spec.subspaces = 5;
  spec.ambient_dim = 30;
  spec.per_class = 200;
  const SyntheticData data = GenerateSynthetic(spec);
  TrainConfig config;
  config.num_classes = 5;
  config.batch_size = static_cast<std::size_t>(state.range(0));
  config.epochs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Train(data.views, config));
  }
}
BENCHMARK(BM_TrainEpoch)->Arg(100)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sagl

BENCHMARK_MAIN();
