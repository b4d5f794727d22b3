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
 * Finite-dimensional operator primitives: the traceless Hermitian operator
 * basis, Bloch-vector parametrization of density matrices, Hilbert-Schmidt
 * distance, tensor products, partial traces and Hermitian eigensystems.
 */
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace pgtomo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Orthogonal basis {lambda_i} of traceless Hermitian dim x dim matrices,
/// normalized so that tr(lambda_i lambda_j) = 2 delta_ij.
struct OperatorBasis {
    int dim = 0;
    std::vector<Matrix> elements; // dim^2 - 1 matrices
};

/// Real coefficient vector s of length dim^2 - 1 parametrizing the Hermitian
/// unit-trace matrix I/dim + (1/2) sum_i s_i lambda_i.
struct BlochVector {
    int dim = 0;
    RealVector coeffs;
};

/// Hermitian unit-trace matrix together with a positivity verdict. Bloch
/// vectors outside the state space map to matrices with is_psd = false.
struct HermitianState {
    Matrix matrix;
    bool is_psd = false;
};

/// Density matrix with invariants checked at construction: Hermitian and
/// unit trace within 1e-10, smallest eigenvalue >= -1e-10.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix rho);

    const Matrix &matrix() const { return rho_; }
    Eigen::Index dim() const { return rho_.rows(); }

  private:
    Matrix rho_;
};

/// Eigensystem of a Hermitian matrix. Eigenvalues are sorted in descending
/// order; vectors.col(i) is the unit eigenvector for values(i), with its
/// largest-magnitude component rotated to be real and non-negative.
struct EigenSystem {
    RealVector values;
    Matrix vectors;
};

/// Which tensor factor partial_trace keeps.
enum class Subsystem { first, second };

/// Generalized Gell-Mann basis for the given dimension, ordered as all
/// symmetric off-diagonal elements, then all antisymmetric ones (each set in
/// lexicographic index order), then the diagonal ladder. For dim = 2 this is
/// exactly {X, Y, Z}.
OperatorBasis gell_mann_basis(int dim);

/// Expands s into I/dim + (1/2) sum_i s_i lambda_i and reports positivity.
HermitianState bloch_to_density(const BlochVector &s);

/// Coefficients s_i = tr(rho lambda_i) of a Hermitian matrix. Inverse of
/// bloch_to_density on unit-trace inputs.
BlochVector density_to_bloch(const Matrix &rho, const OperatorBasis &basis);
BlochVector density_to_bloch(const Matrix &rho);

/// Hilbert-Schmidt distance 2^{-1/2} ||a - b||_F between two equally shaped
/// matrices.
double hs_distance(const Matrix &a, const Matrix &b);

/// Kronecker product with the first factor most significant: for square
/// inputs the result acts on index i1 * dim(b) + i2.
Matrix tensor_product(const Matrix &a, const Matrix &b);

/// Partial trace of a (dim_first * dim_second) square matrix over the factor
/// not kept.
Matrix partial_trace(const Matrix &m, Eigen::Index dim_first,
                     Eigen::Index dim_second, Subsystem keep);

/// Eigendecomposition of a Hermitian matrix (accepted up to deviation 1e-8,
/// computed on the symmetrized (M + M^dagger)/2).
EigenSystem hermitian_eig(const Matrix &m);

} // namespace pgtomo
