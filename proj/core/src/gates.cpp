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

#include "pgtomo/gates.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pgtomo/errors.hpp"

namespace pgtomo {

namespace {

constexpr double kUnitaryTol = 1e-8;

Matrix pauli(Axis axis) {
    switch (axis) {
    case Axis::x:
        return pauli_x();
    case Axis::y:
        return pauli_y();
    case Axis::z:
        return pauli_z();
    }
    throw std::invalid_argument("invalid rotation axis");
}

} // namespace

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix rotation_gate(Axis axis, double angle) {
    return std::cos(0.5 * angle) * Matrix::Identity(2, 2) -
           Complex(0, 1) * std::sin(0.5 * angle) * pauli(axis);
}

Matrix cnot_gate() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

Matrix GateSpec::to_matrix() const {
    switch (kind) {
    case Kind::identity:
        if (dim < 1) {
            throw std::invalid_argument("GateSpec: identity dimension must be positive");
        }
        return Matrix::Identity(dim, dim);
    case Kind::rotation:
        return rotation_gate(axis, angle);
    case Kind::cnot:
        return cnot_gate();
    case Kind::composed: {
        if (factors.empty()) {
            throw std::invalid_argument("GateSpec: composed gate has no factors");
        }
        Matrix u = factors.front().to_matrix();
        for (std::size_t i = 1; i < factors.size(); ++i) {
            const Matrix next = factors[i].to_matrix();
            if (next.rows() != u.rows()) {
                throw std::invalid_argument(
                    "GateSpec: composed factors have mismatched dimensions");
            }
            u = next * u;
        }
        return u;
    }
    }
    throw std::invalid_argument("GateSpec: unknown kind");
}

ChoiState ChannelSpec::to_choi() const {
    switch (kind) {
    case Kind::unitary:
        return choi_of_unitary(gate.to_matrix());
    case Kind::depolarizing:
        return choi_of_depolarizing(p);
    case Kind::choi:
        if (!choi.has_value()) {
            throw std::invalid_argument("ChannelSpec: missing Choi state");
        }
        return *choi;
    }
    throw std::invalid_argument("ChannelSpec: unknown kind");
}

std::vector<DensityMatrix> tetrahedron_probes() {
    const double polar = std::acos(-1.0 / 3.0);
    const double sin_polar = std::sin(polar);
    const std::array<double, 3> azimuths = {
        -0.5 * std::numbers::pi, 150.0 / 180.0 * std::numbers::pi,
        30.0 / 180.0 * std::numbers::pi};

    std::vector<DensityMatrix> probes;
    probes.reserve(4);
    BlochVector s;
    s.dim = 2;
    s.coeffs.resize(3);
    s.coeffs << 0.0, 0.0, 1.0;
    probes.emplace_back(bloch_to_density(s).matrix);
    for (double phi : azimuths) {
        s.coeffs << sin_polar * std::cos(phi), sin_polar * std::sin(phi),
            -1.0 / 3.0;
        probes.emplace_back(bloch_to_density(s).matrix);
    }
    return probes;
}

std::vector<Povm> calibrated_povms() {
    Matrix e0 = Matrix::Zero(2, 2);
    e0(0, 0) = 0.972;
    e0(1, 1) = 0.093;
    Matrix e1 = Matrix::Identity(2, 2) - e0;

    const std::array<Matrix, 3> rotations = {
        rotation_gate(Axis::y, 0.5 * std::numbers::pi),
        rotation_gate(Axis::x, 0.5 * std::numbers::pi),
        Matrix::Identity(2, 2)};

    std::vector<Povm> povms;
    povms.reserve(3);
    for (const Matrix &u : rotations) {
        povms.emplace_back(std::vector<Matrix>{u.adjoint() * e0 * u,
                                               u.adjoint() * e1 * u});
    }
    return povms;
}

ChoiState choi_of_unitary(const Matrix &u) {
    if (u.rows() != u.cols() || u.rows() < 1) {
        throw std::invalid_argument("choi_of_unitary: matrix is not square");
    }
    const Eigen::Index d = u.rows();
    if ((u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() >
        kUnitaryTol) {
        throw MathPreconditionError("choi_of_unitary: matrix is not unitary");
    }
    Eigen::VectorXcd phi(d * d);
    for (Eigen::Index n = 0; n < d; ++n) {
        phi.segment(n * d, d) = u.col(n);
    }
    phi /= std::sqrt(static_cast<double>(d));
    return ChoiState(Matrix(phi * phi.adjoint()), d, d);
}

ChoiState choi_of_depolarizing(double p) {
    if (p < 0.0 || p > 1.0) {
        throw InputFormatError("choi_of_depolarizing: p must lie in [0, 1]");
    }
    const ChoiState identity = choi_of_unitary(Matrix::Identity(2, 2));
    Matrix m = (1.0 - p) * identity.matrix() +
               p * Matrix::Identity(4, 4) / 4.0;
    return ChoiState(std::move(m), 2, 2);
}

} // namespace pgtomo
