// Copyright 2026 The qrc Authors
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


#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qrc/learner.hpp"
#include "qrc/reservoir.hpp"

namespace {

using namespace qrc;

ReservoirParams params_for(int n, double gamma) {
  ReservoirConfig c;
  c.n_qubits = n;
  c.gamma = gamma;
  return sample_parameters(c);
}

// One reservoir evaluation on the GKSL path (Chebyshev) and the unitary path.
void BM_FeaturizeGksl(benchmark::State& state) {
  const ReservoirParams p = params_for(static_cast<int>(state.range(0)), 1.5e-2);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(featurize(p, x));
    x += 1e-3;
  }
}
BENCHMARK(BM_FeaturizeGksl)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_FeaturizeUnitary(benchmark::State& state) {
  const ReservoirParams p = params_for(static_cast<int>(state.range(0)), 0.0);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(featurize(p, x));
    x += 1e-3;
  }
}
BENCHMARK(BM_FeaturizeUnitary)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_DenseVsChebyshev(benchmark::State& state) {
  ReservoirConfig c;
  c.n_qubits = 4;
  c.propagator = state.range(0) ? DensityPropagator::dense : DensityPropagator::chebyshev;
  const ReservoirParams p = sample_parameters(c);
  for (auto _ : state) benchmark::DoNotOptimize(featurize(p, 0.3));
  state.SetLabel(state.range(0) ? "dense" : "chebyshev");
}
BENCHMARK(BM_DenseVsChebyshev)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Ridge fit at the size of a delta = 100 embedding of 5 observables.
void BM_RidgeFit(benchmark::State& state) {
  const auto rows = state.range(0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  RealMatrix x(rows, 2000), y(1, 2000);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
  for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = z(rng);
  for (auto _ : state) benchmark::DoNotOptimize(ridge_fit(x, y, 1e-4, false));
}
BENCHMARK(BM_RidgeFit)->Arg(6)->Arg(56)->Arg(506)->Unit(benchmark::kMillisecond);

void BM_DelayEmbed(benchmark::State& state) {
  RealMatrix f = RealMatrix::Random(5, 2500);
  for (auto _ : state) benchmark::DoNotOptimize(delay_embed(f, static_cast<int>(state.range(0)), true));
}
BENCHMARK(BM_DelayEmbed)->Arg(0)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
