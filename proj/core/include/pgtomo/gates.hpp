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
 * Gate and channel construction: single-qubit rotations under the half-angle
 * convention R_a(theta) = cos(theta/2) I - i sin(theta/2) sigma_a, CNOT,
 * tetrahedron probe states, the calibrated three-setting measurement set,
 * and Choi states of unitary and depolarizing channels.
 */
#pragma once

#include <optional>
#include <vector>

#include "pgtomo/measurement.hpp"
#include "pgtomo/operator_core.hpp"
#include "pgtomo/process_estimation.hpp"

namespace pgtomo {

enum class Axis { x, y, z };

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// R_a(theta) = cos(theta/2) I - i sin(theta/2) sigma_a; in particular
/// R_z(phi) = diag(e^{-i phi/2}, e^{i phi/2}).
Matrix rotation_gate(Axis axis, double angle);

Matrix cnot_gate();

/// A unitary described structurally. `factors` of a composed gate are listed
/// in application order, so the resulting matrix is the reverse-order
/// product.
struct GateSpec {
    enum class Kind { identity, rotation, cnot, composed };

    Kind kind = Kind::identity;
    int dim = 2;        // identity only
    Axis axis = Axis::x; // rotation only
    double angle = 0.0;  // rotation only
    std::vector<GateSpec> factors; // composed only

    Matrix to_matrix() const;
};

/// A channel described structurally; to_choi() always yields a physical
/// Choi state.
struct ChannelSpec {
    enum class Kind { unitary, depolarizing, choi };

    Kind kind = Kind::unitary;
    GateSpec gate;                 // unitary only
    double p = 0.0;                // depolarizing only
    std::optional<ChoiState> choi; // choi only

    ChoiState to_choi() const;
};

/// Four pure qubit states whose Bloch vectors form a regular tetrahedron:
/// s_1 = (0, 0, 1) and s_k = (sin t0 cos phi_k, sin t0 sin phi_k, -1/3) with
/// cos t0 = -1/3 and phi in {-90, 150, 30} degrees. Pairwise Bloch dot
/// products are -1/3.
std::vector<DensityMatrix> tetrahedron_probes();

/// The calibrated three-setting measurement set: the computational-basis
/// setting Pi^(3) = {diag(0.972, 0.093), diag(0.028, 0.907)} and its
/// conjugations Pi^(j)_m = U_j^dagger Pi^(3)_m U_j with U_1 = R_y(pi/2),
/// U_2 = R_x(pi/2), U_3 = I.
std::vector<Povm> calibrated_povms();

/// Choi state (1/d) sum_{n,m} |n><m| (x) U|n><m|U^dagger of the channel
/// rho -> U rho U^dagger. Rank one.
ChoiState choi_of_unitary(const Matrix &u);

/// Qubit depolarizing channel: (1 - p) |Phi+><Phi+| + p I/4.
ChoiState choi_of_depolarizing(double p);

} // namespace pgtomo
