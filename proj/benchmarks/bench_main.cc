// Copyright 2026 The qwalk Authors
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

#include <benchmark/benchmark.h>

#include "qwalk/decoherence.h"
#include "qwalk/hitting.h"
#include "qwalk/spectral.h"

namespace {

using namespace qwalk;

MeasuredWalkSpec hypercube_spec(int n, bool dft) {
    ColoredGraph g = build_hypercube(n);
    Mat U = evolution_operator(g, dft ? dft_coin(n) : grover_coin(n)).matrix;
    BasisIndexing idx = g.indexing();
    return MeasuredWalkSpec::pure(U, final_vertex_mask(idx, {(1 << n) - 1}), symmetric_state(idx, 0));
}

void BM_ClosedFormDense(benchmark::State &state) {
    auto spec = hypercube_spec((int)state.range(0), true);
    ClosedFormOptions opt;
    opt.backend = ClosedFormBackend::Dense;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hitting_time_closed_form(spec, opt));
    }
}
BENCHMARK(BM_ClosedFormDense)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ClosedFormSchur(benchmark::State &state) {
    auto spec = hypercube_spec((int)state.range(0), true);
    ClosedFormOptions opt;
    opt.backend = ClosedFormBackend::Schur;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hitting_time_closed_form(spec, opt));
    }
}
BENCHMARK(BM_ClosedFormSchur)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Series(benchmark::State &state) {
    auto spec = hypercube_spec((int)state.range(0), false);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hitting_time_series(spec, 1e-8));
    }
}
BENCHMARK(BM_Series)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_EigenClusters(benchmark::State &state) {
    auto spec = hypercube_spec((int)state.range(0), false);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigenspace_clusters(spec.U));
    }
}
BENCHMARK(BM_EigenClusters)->Arg(3)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_DecoheredClosedForm(benchmark::State &state) {
    int n = (int)state.range(0);
    auto spec = hypercube_spec(n, false);
    Channel ch = dephasing_channel(DephasingKind::Both, 0.3, 1 << n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decohered_hitting_time(spec, ch));
    }
}
BENCHMARK(BM_DecoheredClosedForm)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
