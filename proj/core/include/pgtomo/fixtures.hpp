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
 * Embedded reference data from the published superconducting-processor
 * teleportation experiment: the four reconstructed output states with their
 * reported target distances, the reconstructed Choi matrix of the
 * teleportation channel, and the ideal (identity-channel) Choi target.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pgtomo/gates.hpp"
#include "pgtomo/operator_core.hpp"
#include "pgtomo/process_estimation.hpp"

namespace pgtomo {

/// Published values, embedded verbatim. The reconstructed Choi matrix is
/// carried both as printed (`choi_published_raw`, not exactly Hermitian: its
/// two corner entries disagree, 0.372+0.058i vs the conjugate of
/// 0.397+0.058i) and symmetrized via (M + M^dagger)/2 (`choi_published`).
struct ReferenceExperiment {
    std::vector<DensityMatrix> output_states; // reconstructed, one per probe
    std::array<double, 4> published_distances; // reported per-state distance column
    double delta = 0.03;                       // certified per-state radius
    double cl = 0.87;                          // certified confidence level
    std::uint64_t shots_per_setting = 8192;
    Matrix choi_published_raw;
    Matrix choi_published; // symmetrized
    // Identity channel, the teleportation target.
    ChoiState ideal_choi = choi_of_unitary(Matrix::Identity(2, 2));
    double published_delta_tilde = 0.18; // reported final process bound
};

const ReferenceExperiment &reference_experiment();

} // namespace pgtomo
