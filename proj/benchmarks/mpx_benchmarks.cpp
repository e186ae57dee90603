// Copyright 2026 The mpx Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numeric>

#include "mpx/booster.hpp"
#include "mpx/ingest.hpp"
#include "mpx/random.hpp"
#include "mpx/sampler.hpp"

namespace {

const mpx::Dataset& fixture() {
  static const mpx::Dataset d =
      mpx::ingest::load_dataset(std::string(MPX_SOURCE_DIR) + "/data/fixtures/cases_synth.csv").dataset;
  return d;
}

mpx::Dataset scaled(std::size_t rows) {
  const mpx::Dataset& base = fixture();
  mpx::Dataset d;
  d.vocabulary = base.vocabulary;
  for (std::size_t i = 0; i < rows; ++i) d.samples.push_back(base.samples[i % base.size()]);
  return d;
}

void BM_FindBestSplit(benchmark::State& state) {
  const mpx::Dataset d = scaled(static_cast<std::size_t>(state.range(0)));
  const mpx::boost::FeatureMatrix x(d);
  std::vector<mpx::boost::GradPair> g;
  for (const auto& s : d.samples) g.push_back(mpx::boost::logistic_grad(s.label, 0.5));
  std::vector<std::size_t> rows(d.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpx::boost::find_best_split(rows, x, g, {}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.size() * d.dimension()));
}
BENCHMARK(BM_FindBestSplit)->Arg(200)->Arg(2000);

void BM_Train80(benchmark::State& state) {
  const mpx::Dataset d = scaled(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpx::boost::train(d, {}));
  }
}
BENCHMARK(BM_Train80)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
  const auto model = mpx::boost::train(fixture(), {}).model;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpx::boost::predict_margin(model, fixture().samples[i++ % fixture().size()].features));
  }
}
BENCHMARK(BM_Predict);

void BM_Oversample(benchmark::State& state) {
  const mpx::Dataset d = scaled(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpx::smote::oversample(d, {}));
  }
}
BENCHMARK(BM_Oversample)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
