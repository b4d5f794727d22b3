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
 * Precision-guaranteed process tomography: decomposition of the matrix units
 * |n><m| over probe states, Choi assembly from per-probe output estimates,
 * projection onto the physical (PSD, trace-preserving) Choi set, and the
 * Hilbert-Schmidt error bound Delta derived from the probe coefficients.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgtomo/measurement.hpp"
#include "pgtomo/operator_core.hpp"
#include "pgtomo/state_estimation.hpp"

namespace pgtomo {

/// Choi state of a trace-preserving channel on input (x) output space, with
/// the input factor most significant. Physical invariants are checked at
/// construction: Hermitian, PSD and tr_out = I/d_in, each within 1e-8.
class ChoiState {
  public:
    ChoiState(Matrix matrix, Eigen::Index d_in, Eigen::Index d_out);

    const Matrix &matrix() const { return matrix_; }
    Eigen::Index d_in() const { return d_in_; }
    Eigen::Index d_out() const { return d_out_; }

  private:
    Matrix matrix_;
    Eigen::Index d_in_;
    Eigen::Index d_out_;
};

/// Coefficients C^k_{n,m} with sum_k C^k_{n,m} rho_k = |n><m|. Entry (n, m)
/// of c[k] is C^k_{n,m}; Hermitian probes force C^k_{m,n} = conj(C^k_{n,m}).
struct CoefficientTensor {
    int d_in = 0;
    std::vector<Matrix> c; // one d_in x d_in matrix per probe
};

/// Result of the Dykstra projection onto the physical Choi set.
struct ProjectionResult {
    Matrix matrix; // exactly trace-preserving, PSD within tolerance
    int iterations = 0;
    double change = 0.0;       // HS distance between the last two iterates
    double psd_residual = 0.0; // magnitude of the most negative eigenvalue
};

struct ProcessCertificate {
    double delta_state = 0.0;
    double cl = 0.0;
    double cl_raw = 0.0;
    double score_factor = 0.0;
    double delta = 0.0; // delta_state * score_factor / d_in
    std::optional<double> delta_tilde;
    std::uint64_t n_total_per_probe = 0;
};

struct ProcessTargetBound {
    double distance = 0.0;
    double delta_tilde = 0.0;
};

struct ProcessTomographyOptions {
    CertificateRequest request;
    EnmMode mode = EnmMode::hs_projection;
    std::optional<Matrix> target; // Choi matrix to bound against
};

struct ProcessTomographyResult {
    std::vector<StateTomographyResult> probe_runs;
    CoefficientTensor coefficients;
    Matrix choi_raw; // assembled, possibly unphysical
    ChoiState choi;  // projected
    ProjectionResult projection;
    ProcessCertificate certificate;
};

struct ProbeSearchResult {
    double best_score = 0.0;
    std::vector<Matrix> probes;
    std::uint64_t trials_evaluated = 0;
    std::uint64_t trials_skipped = 0; // degenerate draws failing the span test
};

/// Solves |n><m| = sum_k C^k_{n,m} rho_k for all (n, m). Exactly determined
/// sets (M = d_in^2) give the unique solution; overcomplete sets give the
/// minimum-norm one. Throws MathPreconditionError when the probes do not
/// span the operator space (condition number above 1e12).
CoefficientTensor decompose_coefficients(const std::vector<DensityMatrix> &probes);

/// rho_E = (1/d_in) sum_{n,m} |n><m| (x) sum_k C^k_{n,m} outputs[k].
/// Hermitian and unit trace, but not necessarily PSD.
Matrix assemble_choi(const CoefficientTensor &coeffs,
                     const std::vector<Matrix> &outputs);

/// Dykstra's alternating projections between the PSD cone and the
/// trace-preservation affine set {X : tr_out X = I/d_in}; stops when a full
/// cycle moves less than 1e-8 in HS distance and the iterate is PSD within
/// 1e-8, or fails after 10^4 iterations. Physical inputs are returned
/// unchanged within tolerance.
ProjectionResult project_physical(const Matrix &choi_raw, Eigen::Index d_in,
                                  Eigen::Index d_out);

/// score_factor = sqrt(sum_{k,k'} |sum_{n,m} C^k_{n,m} conj(C^{k'}_{n,m})|).
double score_factor(const CoefficientTensor &coeffs);

/// Delta = delta_state * score_factor / d_in: certified Hilbert-Schmidt
/// radius around the assembled Choi at the per-probe confidence level.
struct DeltaBound {
    double delta = 0.0;
    double score_factor = 0.0;
};
DeltaBound delta_bound(const CoefficientTensor &coeffs, double delta_state);

/// delta_tilde = Delta + distance(choi_rec, choi_target). Plain matrices so
/// published reference data that narrowly misses the physical invariants can
/// still be compared.
ProcessTargetBound process_target_bound(const Matrix &choi_rec,
                                        const Matrix &choi_target, double Delta);

/// rho_out = d_in * tr_in[(rho_in^T (x) I) choi].
Matrix apply_choi(const ChoiState &choi, const Matrix &rho_in);

/// Decompose, assemble and project in one step from known output states.
struct ProcessReconstruction {
    CoefficientTensor coefficients;
    Matrix choi_raw;
    ProjectionResult projection;
};
ProcessReconstruction reconstruct_from_outputs(
    const std::vector<DensityMatrix> &probes,
    const std::vector<Matrix> &outputs);

/// Full pipeline from per-probe measurement records. Certification assumes
/// the identical measurement setup for every probe (same POVMs and shot
/// totals); mixed setups are rejected.
ProcessTomographyResult run_process_tomography(
    const std::vector<MeasurementRecord> &records,
    const std::vector<DensityMatrix> &probes, const std::vector<Povm> &povms,
    const ProcessTomographyOptions &options);

/// Simulation entry point: outputs are apply_choi(truth, probe_k), counts
/// are drawn per probe from sub-stream (seed, k).
ProcessTomographyResult run_process_tomography(
    const ChoiState &truth, const std::vector<DensityMatrix> &probes,
    const std::vector<Povm> &povms, std::uint64_t shots_per_setting,
    std::uint64_t seed, const ProcessTomographyOptions &options);

/// Randomized search over pure-state probe sets (normalized complex Gaussian
/// vectors), returning the set with the smallest score_factor. Deterministic
/// per seed; draws failing the span test are skipped and counted.
ProbeSearchResult probe_search(int d_in, int num_probes, std::uint64_t trials,
                               std::uint64_t seed);

} // namespace pgtomo
