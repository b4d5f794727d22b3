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

#include "pgtomo/fixtures.hpp"

#include "pgtomo/gates.hpp"

namespace pgtomo {

namespace {

Matrix qubit_state(double r00, Complex r01, double r11) {
    Matrix m(2, 2);
    m(0, 0) = r00;
    m(0, 1) = r01;
    m(1, 0) = std::conj(r01);
    m(1, 1) = r11;
    return m;
}

ReferenceExperiment build() {
    ReferenceExperiment ref;
    ref.output_states.reserve(4);
    ref.output_states.emplace_back(
        qubit_state(0.969, Complex(-0.038, -0.027), 0.031));
    ref.output_states.emplace_back(
        qubit_state(0.420, Complex(0.009, 0.348), 0.580));
    ref.output_states.emplace_back(
        qubit_state(0.430, Complex(-0.380, -0.193), 0.570));
    ref.output_states.emplace_back(
        qubit_state(0.419, Complex(0.235, -0.288), 0.581));
    ref.published_distances = {0.06, 0.15, 0.11, 0.20};

    Matrix choi(4, 4);
    choi << Complex(0.484, 0.0), Complex(-0.019, -0.013), Complex(-0.004, 0.0),
        Complex(0.372, 0.058), //
        Complex(-0.019, 0.013), Complex(0.016, 0.0), Complex(-0.020, 0.0),
        Complex(0.003, -0.002), //
        Complex(-0.003, -0.002), Complex(-0.002, 0.0), Complex(0.075, 0.0),
        Complex(-0.024, -0.027), //
        Complex(0.397, 0.058), Complex(0.003, 0.002), Complex(-0.024, 0.027),
        Complex(0.425, 0.0);
    ref.choi_published_raw = choi;
    ref.choi_published = 0.5 * (choi + choi.adjoint());

    return ref;
}

} // namespace

const ReferenceExperiment &reference_experiment() {
    static const ReferenceExperiment ref = build();
    return ref;
}

} // namespace pgtomo
