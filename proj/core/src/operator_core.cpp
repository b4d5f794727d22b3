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

#include "pgtomo/operator_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pgtomo {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kEigHermitianTol = 1e-8;

void require_square(const Matrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(what) + ": matrix is not square");
    }
}

double hermiticity_deviation(const Matrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace

OperatorBasis gell_mann_basis(int dim) {
    if (dim < 1) {
        throw std::invalid_argument("gell_mann_basis: dimension must be positive");
    }
    OperatorBasis basis;
    basis.dim = dim;
    basis.elements.reserve(static_cast<std::size_t>(dim) * dim - 1);
    const Complex i_unit(0.0, 1.0);

    for (int j = 0; j < dim; ++j) {
        for (int k = j + 1; k < dim; ++k) {
            Matrix m = Matrix::Zero(dim, dim);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            basis.elements.push_back(std::move(m));
        }
    }
    for (int j = 0; j < dim; ++j) {
        for (int k = j + 1; k < dim; ++k) {
            Matrix m = Matrix::Zero(dim, dim);
            m(j, k) = -i_unit;
            m(k, j) = i_unit;
            basis.elements.push_back(std::move(m));
        }
    }
    for (int l = 1; l < dim; ++l) {
        Matrix m = Matrix::Zero(dim, dim);
        const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        for (int j = 0; j < l; ++j) {
            m(j, j) = scale;
        }
        m(l, l) = -scale * static_cast<double>(l);
        basis.elements.push_back(std::move(m));
    }
    return basis;
}

HermitianState bloch_to_density(const BlochVector &s) {
    if (s.dim < 1) {
        throw std::invalid_argument("bloch_to_density: dimension must be positive");
    }
    const Eigen::Index expected =
        static_cast<Eigen::Index>(s.dim) * s.dim - 1;
    if (s.coeffs.size() != expected) {
        throw std::invalid_argument(
            "bloch_to_density: coefficient vector has length " +
            std::to_string(s.coeffs.size()) + ", expected " +
            std::to_string(expected));
    }
    const OperatorBasis basis = gell_mann_basis(s.dim);
    Matrix rho = Matrix::Identity(s.dim, s.dim) / static_cast<double>(s.dim);
    for (Eigen::Index i = 0; i < expected; ++i) {
        rho += 0.5 * s.coeffs(i) * basis.elements[static_cast<std::size_t>(i)];
    }
    HermitianState out;
    out.is_psd = hermitian_eig(rho).values.minCoeff() >= -kPsdTol;
    out.matrix = std::move(rho);
    return out;
}

BlochVector density_to_bloch(const Matrix &rho, const OperatorBasis &basis) {
    require_square(rho, "density_to_bloch");
    if (rho.rows() != basis.dim) {
        throw std::invalid_argument("density_to_bloch: basis dimension mismatch");
    }
    if (hermiticity_deviation(rho) > kEigHermitianTol) {
        throw std::invalid_argument("density_to_bloch: input is not Hermitian");
    }
    BlochVector s;
    s.dim = basis.dim;
    s.coeffs.resize(static_cast<Eigen::Index>(basis.elements.size()));
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        s.coeffs(static_cast<Eigen::Index>(i)) =
            (rho * basis.elements[i]).trace().real();
    }
    return s;
}

BlochVector density_to_bloch(const Matrix &rho) {
    require_square(rho, "density_to_bloch");
    return density_to_bloch(rho, gell_mann_basis(static_cast<int>(rho.rows())));
}

double hs_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("hs_distance: shape mismatch");
    }
    return (a - b).norm() / std::sqrt(2.0);
}

Matrix tensor_product(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

Matrix partial_trace(const Matrix &m, Eigen::Index dim_first,
                     Eigen::Index dim_second, Subsystem keep) {
    require_square(m, "partial_trace");
    if (dim_first < 1 || dim_second < 1 || m.rows() != dim_first * dim_second) {
        throw std::invalid_argument(
            "partial_trace: matrix size does not factor as requested");
    }
    if (keep == Subsystem::first) {
        Matrix out = Matrix::Zero(dim_first, dim_first);
        for (Eigen::Index i = 0; i < dim_first; ++i) {
            for (Eigen::Index j = 0; j < dim_first; ++j) {
                for (Eigen::Index k = 0; k < dim_second; ++k) {
                    out(i, j) += m(i * dim_second + k, j * dim_second + k);
                }
            }
        }
        return out;
    }
    Matrix out = Matrix::Zero(dim_second, dim_second);
    for (Eigen::Index k = 0; k < dim_second; ++k) {
        for (Eigen::Index l = 0; l < dim_second; ++l) {
            for (Eigen::Index i = 0; i < dim_first; ++i) {
                out(k, l) += m(i * dim_second + k, i * dim_second + l);
            }
        }
    }
    return out;
}

EigenSystem hermitian_eig(const Matrix &m) {
    require_square(m, "hermitian_eig");
    if (hermiticity_deviation(m) > kEigHermitianTol) {
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");
    }
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }

    const Eigen::Index n = m.rows();
    EigenSystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index src = n - 1 - i; // solver sorts ascending
        out.values(i) = solver.eigenvalues()(src);
        Eigen::VectorXcd v = solver.eigenvectors().col(src);
        Eigen::Index pivot = 0;
        for (Eigen::Index r = 1; r < n; ++r) {
            if (std::abs(v(r)) > std::abs(v(pivot))) {
                pivot = r;
            }
        }
        const double mag = std::abs(v(pivot));
        if (mag > 0.0) {
            v *= std::conj(v(pivot)) / mag;
        }
        out.vectors.col(i) = v;
    }
    return out;
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
    require_square(rho_, "DensityMatrix");
    if (hermiticity_deviation(rho_) > kHermitianTol) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace differs from one");
    }
    if (hermitian_eig(rho_).values.minCoeff() < -kPsdTol) {
        throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
    }
}

} // namespace pgtomo
