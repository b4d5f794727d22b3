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
 * Precision-guaranteed state tomography: linear least squares inversion of
 * measured frequencies, projection onto physical states, and the
 * finite-sample confidence machinery (c_alpha coefficients, confidence level
 * as a function of the Hilbert-Schmidt radius delta, and its inversion).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgtomo/measurement.hpp"
#include "pgtomo/operator_core.hpp"

namespace pgtomo {

/// How a non-physical least-squares estimate is mapped to a density matrix.
/// hs_projection is the exact Hilbert-Schmidt minimizer (eigenvalues
/// projected onto the probability simplex); truncate_renormalize clips
/// negative eigenvalues to zero and rescales the rest. The modes agree
/// whenever at most one eigenvalue is negative and the others stay positive
/// after the shift, and both leave physical inputs unchanged.
enum class EnmMode { hs_projection, truncate_renormalize };

/// Raw linear inversion result; `rho` is Hermitian and unit trace but may
/// have negative eigenvalues.
struct LlsEstimate {
    BlochVector s;
    Matrix rho;
};

struct StateEstimate {
    LlsEstimate lls;
    DensityMatrix rho_enm;
    EnmMode mode = EnmMode::hs_projection;
};

/// Error certificate: the true state lies within Hilbert-Schmidt distance
/// `delta` of the estimate with probability at least `cl`.
struct PrecisionCertificate {
    double delta = 0.0;
    double cl = 0.0;     // clamped to [0, 1]
    double cl_raw = 0.0; // may be negative for small N or delta
    std::uint64_t n_total = 0;
    Eigen::VectorXd c_alphas;
    std::optional<double> delta0;      // distance to the supplied target
    std::optional<double> delta_tilde; // delta + delta0
};

/// Exactly one of the two must be set.
struct CertificateRequest {
    std::optional<double> cl;
    std::optional<double> delta;
};

struct StateTomographyOptions {
    CertificateRequest request;
    EnmMode mode = EnmMode::hs_projection;
    std::optional<Matrix> target; // density matrix to bound against
};

struct StateTomographyResult {
    StateEstimate estimate;
    PrecisionCertificate certificate;
};

struct StateTargetBound {
    double delta0 = 0.0;
    double delta_tilde = 0.0;
};

/// s = A_L (f - a0) from stacked per-setting frequencies.
LlsEstimate lls_estimate(const std::vector<Eigen::VectorXd> &freqs,
                         const DesignMatrix &design,
                         const OperatorBasis &basis);
LlsEstimate lls_estimate(const MeasurementRecord &record,
                         const DesignMatrix &design,
                         const OperatorBasis &basis);

/// Nearest density matrix to a Hermitian unit-trace input (see EnmMode).
DensityMatrix enm_project(const Matrix &rho_lls, EnmMode mode);

/// c_alpha = sum_j r^(j) (max_m [A_L]_{alpha,(j,m)} - min_m ...)^2 with
/// r^(j) = N / n^(j).
Eigen::VectorXd compute_c_alphas(const DesignMatrix &design,
                                 const std::vector<std::uint64_t> &shots);

/// 1 - 2 sum_alpha exp(-8 delta^2 N / ((d^2 - 1) c_alpha)), unclamped.
double confidence_level_raw(double delta, std::uint64_t n_total,
                            const Eigen::VectorXd &c_alphas, int dim);

/// The raw value clamped below at zero.
double confidence_level(double delta, std::uint64_t n_total,
                        const Eigen::VectorXd &c_alphas, int dim);

/// Smallest delta whose confidence level reaches target_cl, by bisection on
/// [0, 10] to absolute tolerance 1e-9.
double delta_for_cl(double target_cl, std::uint64_t n_total,
                    const Eigen::VectorXd &c_alphas, int dim);

/// delta0 = distance to the target, delta_tilde = delta + delta0.
StateTargetBound state_target_bound(const Matrix &rho_enm,
                                    const Matrix &rho_target, double delta);

/// Full pipeline: design matrix, LLS inversion, physical projection,
/// certificate (delta from cl or vice versa), optional target bound.
StateTomographyResult run_state_tomography(const MeasurementRecord &record,
                                           const std::vector<Povm> &povms,
                                           const StateTomographyOptions &options);

/// Same pipeline on pre-computed frequencies (e.g. exact Born probabilities);
/// shot totals still control the certificate.
StateTomographyResult run_state_tomography(
    const std::vector<Eigen::VectorXd> &freqs,
    const std::vector<std::uint64_t> &shots, const std::vector<Povm> &povms,
    const StateTomographyOptions &options);

} // namespace pgtomo
