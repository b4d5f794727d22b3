// Copyright 2026 The pgtomo developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Microbenchmarks for the hot paths: eigendecomposition, the two physical
 * projections, count simulation, and the end-to-end pipelines.
 */

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "pgtomo/gates.hpp"
#include "pgtomo/measurement.hpp"
#include "pgtomo/operator_core.hpp"
#include "pgtomo/process_estimation.hpp"
#include "pgtomo/rng.hpp"
#include "pgtomo/state_estimation.hpp"

namespace {

using namespace pgtomo;

Matrix random_hermitian(Eigen::Index dim, rng::Stream &stream) {
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = Complex(stream.next_gaussian(), stream.next_gaussian());
        }
    }
    return (m + m.adjoint()) / 2.0;
}

void bm_hermitian_eig(benchmark::State &state) {
    rng::Stream stream(1);
    const Matrix m = random_hermitian(state.range(0), stream);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eig(m));
    }
}
BENCHMARK(bm_hermitian_eig)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void bm_enm_project(benchmark::State &state) {
    rng::Stream stream(2);
    Matrix m = random_hermitian(state.range(0), stream);
    m /= m.trace().real(); // Hermitian, unit trace, indefinite
    for (auto _ : state) {
        benchmark::DoNotOptimize(enm_project(m, EnmMode::hs_projection));
    }
}
BENCHMARK(bm_enm_project)->Arg(2)->Arg(4)->Arg(8);

void bm_project_physical(benchmark::State &state) {
    rng::Stream stream(3);
    Matrix start = choi_of_unitary(Matrix::Identity(2, 2)).matrix();
    Matrix noise = random_hermitian(4, stream);
    noise -= Matrix::Identity(4, 4) * (noise.trace() / 4.0);
    start += 0.2 * noise;
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_physical(start, 2, 2));
    }
}
BENCHMARK(bm_project_physical);

void bm_simulate_counts(benchmark::State &state) {
    const std::vector<Povm> povms = calibrated_povms();
    const DensityMatrix rho(Matrix::Identity(2, 2) / 2.0);
    const std::uint64_t shots = state.range(0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_counts(rho, povms, shots, seed++));
    }
    state.SetItemsProcessed(state.iterations() * 3 * shots);
}
BENCHMARK(bm_simulate_counts)->Arg(1024)->Arg(8192)->Arg(65536);

void bm_state_tomography(benchmark::State &state) {
    const std::vector<Povm> povms = calibrated_povms();
    const DensityMatrix rho(Matrix::Identity(2, 2) / 2.0);
    const MeasurementRecord record = simulate_counts(rho, povms, 8192, 7);
    StateTomographyOptions options;
    options.request.cl = 0.87;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_state_tomography(record, povms, options));
    }
}
BENCHMARK(bm_state_tomography);

void bm_process_tomography(benchmark::State &state) {
    const ChoiState truth = choi_of_depolarizing(0.2);
    const std::vector<DensityMatrix> probes = tetrahedron_probes();
    const std::vector<Povm> povms = calibrated_povms();
    ProcessTomographyOptions options;
    options.request.cl = 0.87;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            run_process_tomography(truth, probes, povms, 8192, seed++,
                                   options));
    }
}
BENCHMARK(bm_process_tomography);

void bm_assemble_and_project(benchmark::State &state) {
    const ChoiState truth = choi_of_depolarizing(0.2);
    const std::vector<DensityMatrix> probes = tetrahedron_probes();
    const CoefficientTensor coeffs = decompose_coefficients(probes);
    std::vector<Matrix> outputs;
    for (const DensityMatrix &probe : probes) {
        outputs.push_back(apply_choi(truth, probe.matrix()));
    }
    // Perturb so the projection has real work to do.
    rng::Stream stream(11);
    for (Matrix &out : outputs) {
        Matrix noise = random_hermitian(2, stream);
        noise -= Matrix::Identity(2, 2) * (noise.trace() / 2.0);
        out += 0.05 * noise;
    }
    for (auto _ : state) {
        const Matrix raw = assemble_choi(coeffs, outputs);
        benchmark::DoNotOptimize(project_physical(raw, 2, 2));
    }
}
BENCHMARK(bm_assemble_and_project);

} // namespace

BENCHMARK_MAIN();
