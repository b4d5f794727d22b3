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

#include <cmath>
#include <stdexcept>

#include <catch2/catch_amalgamated.hpp>

#include "pgtomo/operator_core.hpp"
#include "pgtomo/rng.hpp"
#include "test_util.hpp"

using namespace pgtomo;
using test_util::max_abs_diff;

namespace {

const Complex kI(0.0, 1.0);

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

} // namespace

TEST_CASE("gell_mann_basis is the Pauli basis for qubits") {
    const OperatorBasis basis = gell_mann_basis(2);
    REQUIRE(basis.dim == 2);
    REQUIRE(basis.elements.size() == 3);
    CHECK(max_abs_diff(basis.elements[0], sigma_x()) < 1e-15);
    CHECK(max_abs_diff(basis.elements[1], sigma_y()) < 1e-15);
    CHECK(max_abs_diff(basis.elements[2], sigma_z()) < 1e-15);
}

TEST_CASE("gell_mann_basis elements are traceless Hermitian and orthogonal") {
    for (int dim : {2, 3, 4, 5}) {
        const OperatorBasis basis = gell_mann_basis(dim);
        const auto count = static_cast<std::size_t>(dim * dim - 1);
        REQUIRE(basis.elements.size() == count);
        for (std::size_t i = 0; i < count; ++i) {
            const Matrix &lam = basis.elements[i];
            REQUIRE(lam.rows() == dim);
            CHECK(max_abs_diff(lam, lam.adjoint()) < 1e-14);
            CHECK(std::abs(lam.trace()) < 1e-14);
            for (std::size_t j = 0; j < count; ++j) {
                const Complex overlap =
                    (basis.elements[i] * basis.elements[j]).trace();
                const double expected = i == j ? 2.0 : 0.0;
                CHECK(std::abs(overlap - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("gell_mann_basis rejects nonpositive dimensions") {
    CHECK_THROWS_AS(gell_mann_basis(0), std::invalid_argument);
    CHECK_THROWS_AS(gell_mann_basis(-3), std::invalid_argument);
}

TEST_CASE("bloch round trip reproduces the matrix") {
    rng::Stream stream(101);
    for (int dim : {2, 3, 4}) {
        const OperatorBasis basis = gell_mann_basis(dim);
        for (int rep = 0; rep < 5; ++rep) {
            const Matrix rho = test_util::random_density(dim, stream).matrix();
            const BlochVector s = density_to_bloch(rho, basis);
            REQUIRE(s.coeffs.size() == dim * dim - 1);
            const HermitianState back = bloch_to_density(s);
            CHECK(max_abs_diff(back.matrix, rho) < 1e-12);
            CHECK(back.is_psd);
        }
    }
}

TEST_CASE("bloch vector of the maximally mixed state vanishes") {
    for (int dim : {2, 3, 5}) {
        const Matrix mixed =
            Matrix::Identity(dim, dim) / static_cast<double>(dim);
        const BlochVector s = density_to_bloch(mixed);
        CHECK(s.coeffs.cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("pure states have squared bloch norm 2(1 - 1/d)") {
    rng::Stream stream(202);
    for (int dim : {2, 3, 4}) {
        const Matrix pure = test_util::random_pure(dim, stream);
        const BlochVector s = density_to_bloch(pure);
        const double expected = 2.0 * (1.0 - 1.0 / dim);
        CHECK(s.coeffs.squaredNorm() == Catch::Approx(expected).margin(1e-12));
    }
}

TEST_CASE("bloch_to_density flags vectors outside the state space") {
    BlochVector inside{2, Eigen::Vector3d(0.0, 0.0, 1.0)};
    CHECK(bloch_to_density(inside).is_psd);

    BlochVector outside{2, Eigen::Vector3d(0.0, 0.0, 1.5)};
    const HermitianState h = bloch_to_density(outside);
    CHECK_FALSE(h.is_psd);
    CHECK(std::abs(h.matrix.trace() - Complex(1.0)) < 1e-14);
    CHECK(max_abs_diff(h.matrix, h.matrix.adjoint()) < 1e-14);
}

TEST_CASE("density_to_bloch rejects non-Hermitian input") {
    Matrix bad(2, 2);
    bad << 1.0, 0.5, 0.0, 0.0;
    CHECK_THROWS_AS(density_to_bloch(bad), std::invalid_argument);
}

TEST_CASE("hs_distance matches the qubit Bloch formula") {
    rng::Stream stream(303);
    const OperatorBasis basis = gell_mann_basis(2);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix a = test_util::random_density(2, stream).matrix();
        const Matrix b = test_util::random_density(2, stream).matrix();
        const Eigen::VectorXd sa = density_to_bloch(a, basis).coeffs;
        const Eigen::VectorXd sb = density_to_bloch(b, basis).coeffs;
        CHECK(hs_distance(a, b) ==
              Catch::Approx((sa - sb).norm() / 2.0).margin(1e-13));
    }
}

TEST_CASE("hs_distance of orthogonal pure states is one") {
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    Matrix one = Matrix::Zero(2, 2);
    one(1, 1) = 1.0;
    CHECK(hs_distance(zero, one) == Catch::Approx(1.0).margin(1e-14));
    CHECK(hs_distance(zero, zero) == 0.0);
}

TEST_CASE("hs_distance rejects shape mismatches") {
    CHECK_THROWS_AS(hs_distance(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                    std::invalid_argument);
}

TEST_CASE("tensor_product lays out the first factor most significantly") {
    Matrix a(2, 2);
    a << 1, 2, 3, 4;
    Matrix b(2, 2);
    b << 0, 5, 6, 7;
    const Matrix t = tensor_product(a, b);
    REQUIRE(t.rows() == 4);
    // (i1 i2, j1 j2) = a(i1, j1) b(i2, j2)
    CHECK(t(0, 1) == Complex(5.0));
    CHECK(t(1, 0) == Complex(6.0));
    CHECK(t(2, 3) == Complex(20.0)); // a(1,1) b(0,1)
    CHECK(t(3, 2) == Complex(24.0)); // a(1,1) b(1,0)
}

TEST_CASE("tensor_product satisfies the mixed product property") {
    rng::Stream stream(404);
    const Matrix a = test_util::random_ginibre(2, 2, stream);
    const Matrix b = test_util::random_ginibre(3, 3, stream);
    const Matrix c = test_util::random_ginibre(2, 2, stream);
    const Matrix d = test_util::random_ginibre(3, 3, stream);
    CHECK(max_abs_diff(tensor_product(a, b) * tensor_product(c, d),
                       tensor_product(a * c, b * d)) < 1e-12);
}

TEST_CASE("partial_trace inverts tensor products") {
    rng::Stream stream(505);
    const Matrix a = test_util::random_density(2, stream).matrix();
    const Matrix b = test_util::random_density(3, stream).matrix();
    const Matrix ab = tensor_product(a, b);

    CHECK(max_abs_diff(partial_trace(ab, 2, 3, Subsystem::first), a) < 1e-13);
    CHECK(max_abs_diff(partial_trace(ab, 2, 3, Subsystem::second), b) < 1e-13);
}

TEST_CASE("partial_trace preserves the total trace") {
    rng::Stream stream(606);
    const Matrix m = test_util::random_ginibre(6, 6, stream);
    const Matrix kept = partial_trace(m, 2, 3, Subsystem::first);
    CHECK(std::abs(kept.trace() - m.trace()) < 1e-12);
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
    phi(0) = 1.0 / std::sqrt(2.0);
    phi(3) = 1.0 / std::sqrt(2.0);
    const Matrix bell = phi * phi.adjoint();
    const Matrix reduced = partial_trace(bell, 2, 2, Subsystem::first);
    CHECK(max_abs_diff(reduced, Matrix::Identity(2, 2) / 2.0) < 1e-14);
}

TEST_CASE("partial_trace rejects inconsistent dimensions") {
    CHECK_THROWS_AS(partial_trace(Matrix::Identity(5, 5), 2, 3, Subsystem::first),
                    std::invalid_argument);
}

TEST_CASE("hermitian_eig sorts descending and reconstructs the input") {
    rng::Stream stream(707);
    for (int dim : {2, 3, 5}) {
        const Matrix g = test_util::random_ginibre(dim, dim, stream);
        const Matrix h = (g + g.adjoint()) / 2.0;
        const EigenSystem sys = hermitian_eig(h);
        REQUIRE(sys.values.size() == dim);
        for (Eigen::Index i = 0; i + 1 < dim; ++i) {
            CHECK(sys.values(i) >= sys.values(i + 1));
        }
        CHECK(max_abs_diff(sys.vectors * sys.vectors.adjoint(),
                           Matrix::Identity(dim, dim)) < 1e-12);
        const Matrix rebuilt = sys.vectors *
                               sys.values.cast<Complex>().asDiagonal() *
                               sys.vectors.adjoint();
        CHECK(max_abs_diff(rebuilt, h) < 1e-12);
    }
}

TEST_CASE("hermitian_eig fixes eigenvector phases deterministically") {
    rng::Stream stream(808);
    const Matrix g = test_util::random_ginibre(4, 4, stream);
    const Matrix h = (g + g.adjoint()) / 2.0;
    const EigenSystem first = hermitian_eig(h);
    const EigenSystem second = hermitian_eig(h);
    CHECK(max_abs_diff(first.vectors, second.vectors) == 0.0);

    for (Eigen::Index j = 0; j < 4; ++j) {
        Eigen::Index pivot = 0;
        first.vectors.col(j).cwiseAbs().maxCoeff(&pivot);
        const Complex entry = first.vectors(pivot, j);
        CHECK(entry.imag() == Catch::Approx(0.0).margin(1e-12));
        CHECK(entry.real() >= 0.0);
    }
}

TEST_CASE("hermitian_eig accepts roundoff-level asymmetry only") {
    Matrix nearly = sigma_z();
    nearly(0, 1) = Complex(1e-10, 0.0);
    CHECK_NOTHROW(hermitian_eig(nearly));

    Matrix skew = sigma_z();
    skew(0, 1) = Complex(1e-6, 0.0);
    CHECK_THROWS_AS(hermitian_eig(skew), std::invalid_argument);
}

TEST_CASE("DensityMatrix enforces its invariants") {
    Matrix good(2, 2);
    good << 0.75, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.25;
    CHECK_NOTHROW(DensityMatrix(good));

    Matrix bad_trace = good;
    bad_trace(1, 1) = 0.35;
    CHECK_THROWS_AS(DensityMatrix(bad_trace), std::invalid_argument);

    Matrix not_hermitian = good;
    not_hermitian(0, 1) = Complex(0.3, 0.2);
    CHECK_THROWS_AS(DensityMatrix(not_hermitian), std::invalid_argument);

    Matrix negative(2, 2);
    negative << 1.1, 0.0, 0.0, -0.1;
    CHECK_THROWS_AS(DensityMatrix(negative), std::invalid_argument);

    // Roundoff-scale negativity is accepted.
    Matrix borderline(2, 2);
    borderline << 1.0 + 1e-12, 0.0, 0.0, -1e-12;
    CHECK_NOTHROW(DensityMatrix(borderline));
}
