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

#include "pgtomo/process_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pgtomo/errors.hpp"
#include "pgtomo/rng.hpp"

namespace pgtomo {

namespace {

constexpr double kChoiTol = 1e-8;
constexpr double kConditionLimit = 1e12;
constexpr double kDykstraTol = 1e-8;
constexpr int kDykstraMaxIterations = 10000;
constexpr double kReconstructionTol = 1e-10;

Matrix clip_to_psd(const Matrix &m, double *negative_part = nullptr) {
    const EigenSystem eig = hermitian_eig(m);
    Eigen::VectorXd clipped = eig.values.cwiseMax(0.0);
    if (negative_part != nullptr) {
        *negative_part = std::max(0.0, -eig.values.minCoeff());
    }
    Matrix out = eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

Matrix project_trace_preserving(const Matrix &m, Eigen::Index d_in,
                                Eigen::Index d_out) {
    const Matrix reduced = partial_trace(m, d_in, d_out, Subsystem::first);
    const Matrix defect =
        Matrix::Identity(d_in, d_in) / static_cast<double>(d_in) - reduced;
    return m + tensor_product(defect,
                              Matrix::Identity(d_out, d_out) /
                                  static_cast<double>(d_out));
}

} // namespace

ChoiState::ChoiState(Matrix matrix, Eigen::Index d_in, Eigen::Index d_out)
    : matrix_(std::move(matrix)), d_in_(d_in), d_out_(d_out) {
    if (d_in_ < 1 || d_out_ < 1 || matrix_.rows() != matrix_.cols() ||
        matrix_.rows() != d_in_ * d_out_) {
        throw std::invalid_argument("ChoiState: matrix size does not match dims");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kChoiTol) {
        throw MathPreconditionError("ChoiState: matrix is not Hermitian");
    }
    if (hermitian_eig(matrix_).values.minCoeff() < -kChoiTol) {
        throw MathPreconditionError("ChoiState: matrix has a negative eigenvalue");
    }
    const Matrix reduced = partial_trace(matrix_, d_in_, d_out_, Subsystem::first);
    const Matrix expected =
        Matrix::Identity(d_in_, d_in_) / static_cast<double>(d_in_);
    if ((reduced - expected).cwiseAbs().maxCoeff() > kChoiTol) {
        throw MathPreconditionError(
            "ChoiState: output partial trace differs from I/d_in");
    }
}

CoefficientTensor decompose_coefficients(
    const std::vector<DensityMatrix> &probes) {
    if (probes.empty()) {
        throw MathPreconditionError("decompose_coefficients: no probe states");
    }
    const Eigen::Index d = probes.front().dim();
    const Eigen::Index d2 = d * d;
    const auto num_probes = static_cast<Eigen::Index>(probes.size());
    if (num_probes < d2) {
        throw MathPreconditionError(
            "decompose_coefficients: need at least d_in^2 probe states");
    }

    // Columns are column-major vectorizations of the probes.
    Matrix b(d2, num_probes);
    for (Eigen::Index k = 0; k < num_probes; ++k) {
        const Matrix &rho = probes[static_cast<std::size_t>(k)].matrix();
        if (rho.rows() != d) {
            throw std::invalid_argument(
                "decompose_coefficients: probe dimension mismatch");
        }
        b.col(k) = Eigen::Map<const Eigen::VectorXcd>(rho.data(), d2);
    }

    const Matrix overlap = b * b.adjoint(); // d^2 x d^2, PSD
    Eigen::SelfAdjointEigenSolver<Matrix> solver(overlap);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("decompose_coefficients: eigensolver failed");
    }
    const double min_eig = solver.eigenvalues().minCoeff();
    const double max_eig = solver.eigenvalues().maxCoeff();
    const double cond = (min_eig > 0.0)
                            ? max_eig / min_eig
                            : std::numeric_limits<double>::infinity();
    if (!(cond <= kConditionLimit)) {
        throw MathPreconditionError(
            "decompose_coefficients: probe states do not span the operator "
            "space (cond = " +
            std::to_string(cond) + ")");
    }
    const Eigen::VectorXcd inverse_eigs =
        solver.eigenvalues().cwiseInverse().cast<Complex>();
    const Matrix overlap_inverse = solver.eigenvectors() *
                                   inverse_eigs.asDiagonal() *
                                   solver.eigenvectors().adjoint();

    // Minimum-norm coefficients for every matrix unit at once: column
    // m * d + n of (B^dagger overlap^{-1}) solves for |n><m|.
    const Matrix all = b.adjoint() * overlap_inverse;

    CoefficientTensor coeffs;
    coeffs.d_in = static_cast<int>(d);
    coeffs.c.resize(probes.size());
    for (Eigen::Index k = 0; k < num_probes; ++k) {
        Matrix ck(d, d);
        for (Eigen::Index n = 0; n < d; ++n) {
            for (Eigen::Index m = 0; m < d; ++m) {
                ck(n, m) = all(k, m * d + n);
            }
        }
        coeffs.c[static_cast<std::size_t>(k)] = std::move(ck);
    }

    // Roundoff in the solve grows with the conditioning, so the sanity
    // check on the rebuilt matrix units must scale with it too.
    const double rebuild_tol = std::max(kReconstructionTol, 1e-13 * cond);
    for (Eigen::Index n = 0; n < d; ++n) {
        for (Eigen::Index m = 0; m < d; ++m) {
            Matrix rebuilt = Matrix::Zero(d, d);
            for (Eigen::Index k = 0; k < num_probes; ++k) {
                rebuilt += coeffs.c[static_cast<std::size_t>(k)](n, m) *
                           probes[static_cast<std::size_t>(k)].matrix();
            }
            Matrix unit = Matrix::Zero(d, d);
            unit(n, m) = 1.0;
            if ((rebuilt - unit).cwiseAbs().maxCoeff() > rebuild_tol) {
                throw MathPreconditionError(
                    "decompose_coefficients: reconstruction residual above "
                    "tolerance");
            }
        }
    }
    return coeffs;
}

Matrix assemble_choi(const CoefficientTensor &coeffs,
                     const std::vector<Matrix> &outputs) {
    if (outputs.size() != coeffs.c.size()) {
        throw std::invalid_argument(
            "assemble_choi: output count differs from probe count");
    }
    if (outputs.empty()) {
        throw std::invalid_argument("assemble_choi: no outputs");
    }
    const Eigen::Index d_in = coeffs.d_in;
    const Eigen::Index d_out = outputs.front().rows();
    for (const Matrix &out : outputs) {
        if (out.rows() != d_out || out.cols() != d_out) {
            throw std::invalid_argument("assemble_choi: output dimension mismatch");
        }
    }
    Matrix choi = Matrix::Zero(d_in * d_out, d_in * d_out);
    for (Eigen::Index n = 0; n < d_in; ++n) {
        for (Eigen::Index m = 0; m < d_in; ++m) {
            Matrix sigma = Matrix::Zero(d_out, d_out);
            for (std::size_t k = 0; k < outputs.size(); ++k) {
                sigma += coeffs.c[k](n, m) * outputs[k];
            }
            choi.block(n * d_out, m * d_out, d_out, d_out) = sigma;
        }
    }
    choi /= static_cast<double>(d_in);
    return 0.5 * (choi + choi.adjoint());
}

ProjectionResult project_physical(const Matrix &choi_raw, Eigen::Index d_in,
                                  Eigen::Index d_out) {
    if (choi_raw.rows() != choi_raw.cols() ||
        choi_raw.rows() != d_in * d_out) {
        throw std::invalid_argument("project_physical: matrix size mismatch");
    }
    if ((choi_raw - choi_raw.adjoint()).cwiseAbs().maxCoeff() > kChoiTol) {
        throw std::invalid_argument("project_physical: input is not Hermitian");
    }

    Matrix x = 0.5 * (choi_raw + choi_raw.adjoint());
    Matrix p = Matrix::Zero(x.rows(), x.cols());
    Matrix q = Matrix::Zero(x.rows(), x.cols());

    ProjectionResult result;
    for (int iter = 1; iter <= kDykstraMaxIterations; ++iter) {
        const Matrix y = clip_to_psd(x + p);
        p = x + p - y;
        const Matrix z = project_trace_preserving(y + q, d_in, d_out);
        q = y + q - z;

        result.iterations = iter;
        result.change = hs_distance(z, x);
        double negative = 0.0;
        clip_to_psd(z, &negative);
        result.psd_residual = negative;
        x = z;
        if (result.change < kDykstraTol && result.psd_residual < kDykstraTol) {
            result.matrix = std::move(x);
            return result;
        }
    }
    throw MathPreconditionError(
        "project_physical: no convergence after " +
        std::to_string(kDykstraMaxIterations) +
        " iterations (last change " + std::to_string(result.change) +
        ", PSD residual " + std::to_string(result.psd_residual) + ")");
}

double score_factor(const CoefficientTensor &coeffs) {
    double total = 0.0;
    for (const Matrix &ck : coeffs.c) {
        for (const Matrix &cl : coeffs.c) {
            total += std::abs((ck.cwiseProduct(cl.conjugate())).sum());
        }
    }
    return std::sqrt(total);
}

DeltaBound delta_bound(const CoefficientTensor &coeffs, double delta_state) {
    if (delta_state < 0.0) {
        throw std::invalid_argument("delta_bound: delta_state must be >= 0");
    }
    DeltaBound bound;
    bound.score_factor = score_factor(coeffs);
    bound.delta =
        delta_state * bound.score_factor / static_cast<double>(coeffs.d_in);
    return bound;
}

ProcessTargetBound process_target_bound(const Matrix &choi_rec,
                                        const Matrix &choi_target,
                                        double Delta) {
    ProcessTargetBound bound;
    bound.distance = hs_distance(choi_rec, choi_target);
    bound.delta_tilde = Delta + bound.distance;
    return bound;
}

Matrix apply_choi(const ChoiState &choi, const Matrix &rho_in) {
    if (rho_in.rows() != rho_in.cols() || rho_in.rows() != choi.d_in()) {
        throw std::invalid_argument("apply_choi: input dimension mismatch");
    }
    const Matrix lifted =
        tensor_product(rho_in.transpose(),
                       Matrix::Identity(choi.d_out(), choi.d_out())) *
        choi.matrix();
    return static_cast<double>(choi.d_in()) *
           partial_trace(lifted, choi.d_in(), choi.d_out(), Subsystem::second);
}

ProcessReconstruction reconstruct_from_outputs(
    const std::vector<DensityMatrix> &probes,
    const std::vector<Matrix> &outputs) {
    ProcessReconstruction rec;
    rec.coefficients = decompose_coefficients(probes);
    rec.choi_raw = assemble_choi(rec.coefficients, outputs);
    const Eigen::Index d_in = rec.coefficients.d_in;
    const Eigen::Index d_out = outputs.front().rows();
    rec.projection = project_physical(rec.choi_raw, d_in, d_out);
    return rec;
}

ProcessTomographyResult run_process_tomography(
    const std::vector<MeasurementRecord> &records,
    const std::vector<DensityMatrix> &probes, const std::vector<Povm> &povms,
    const ProcessTomographyOptions &options) {
    if (records.size() != probes.size()) {
        throw InputFormatError(
            "run_process_tomography: record count differs from probe count");
    }
    if (probes.empty()) {
        throw InputFormatError("run_process_tomography: no probe states");
    }
    for (std::size_t k = 1; k < records.size(); ++k) {
        if (records[k].shots != records[0].shots) {
            throw InputFormatError(
                "run_process_tomography: certification requires the identical "
                "measurement setup for every probe (mismatched shot totals)");
        }
    }

    StateTomographyOptions state_options;
    state_options.request = options.request;
    state_options.mode = options.mode;

    std::vector<StateTomographyResult> probe_runs;
    probe_runs.reserve(records.size());
    std::vector<Matrix> outputs;
    outputs.reserve(records.size());
    for (std::size_t k = 0; k < records.size(); ++k) {
        StateTomographyResult run =
            run_state_tomography(records[k], povms, state_options);
        outputs.push_back(run.estimate.rho_enm.matrix());
        probe_runs.push_back(std::move(run));
    }

    CoefficientTensor coefficients = decompose_coefficients(probes);
    Matrix choi_raw = assemble_choi(coefficients, outputs);
    const Eigen::Index d_in = coefficients.d_in;
    const Eigen::Index d_out = outputs.front().rows();
    ProjectionResult projection = project_physical(choi_raw, d_in, d_out);

    const PrecisionCertificate &probe_cert = probe_runs[0].certificate;
    ProcessCertificate cert;
    cert.delta_state = probe_cert.delta;
    cert.cl = probe_cert.cl;
    cert.cl_raw = probe_cert.cl_raw;
    cert.n_total_per_probe = probe_cert.n_total;
    const DeltaBound bound = delta_bound(coefficients, cert.delta_state);
    cert.score_factor = bound.score_factor;
    cert.delta = bound.delta;
    if (options.target.has_value()) {
        cert.delta_tilde =
            process_target_bound(projection.matrix, *options.target, cert.delta)
                .delta_tilde;
    }

    ChoiState choi(projection.matrix, d_in, d_out);
    return ProcessTomographyResult{std::move(probe_runs),
                                   std::move(coefficients),
                                   std::move(choi_raw),
                                   std::move(choi),
                                   std::move(projection),
                                   cert};
}

ProcessTomographyResult run_process_tomography(
    const ChoiState &truth, const std::vector<DensityMatrix> &probes,
    const std::vector<Povm> &povms, std::uint64_t shots_per_setting,
    std::uint64_t seed, const ProcessTomographyOptions &options) {
    std::vector<MeasurementRecord> records;
    records.reserve(probes.size());
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const DensityMatrix output(apply_choi(truth, probes[k].matrix()));
        records.push_back(simulate_counts(output, povms, shots_per_setting,
                                          rng::substream_seed(seed, k)));
    }
    return run_process_tomography(records, probes, povms, options);
}

ProbeSearchResult probe_search(int d_in, int num_probes, std::uint64_t trials,
                               std::uint64_t seed) {
    if (d_in < 2) {
        throw InputFormatError("probe_search: dimension must be at least 2");
    }
    if (num_probes < d_in * d_in) {
        throw InputFormatError(
            "probe_search: need at least d_in^2 probe states");
    }
    if (trials == 0) {
        throw InputFormatError("probe_search: trials must be at least 1");
    }

    ProbeSearchResult result;
    result.best_score = std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < trials; ++t) {
        rng::Stream stream(rng::substream_seed(seed, t));
        std::vector<DensityMatrix> probes;
        probes.reserve(static_cast<std::size_t>(num_probes));
        for (int k = 0; k < num_probes; ++k) {
            Eigen::VectorXcd psi(d_in);
            for (int i = 0; i < d_in; ++i) {
                psi(i) = Complex(stream.next_gaussian(), stream.next_gaussian());
            }
            psi /= psi.norm();
            probes.emplace_back(Matrix(psi * psi.adjoint()));
        }
        double score = 0.0;
        try {
            score = score_factor(decompose_coefficients(probes));
        } catch (const MathPreconditionError &) {
            ++result.trials_skipped;
            continue;
        }
        ++result.trials_evaluated;
        if (score < result.best_score) {
            result.best_score = score;
            result.probes.clear();
            result.probes.reserve(probes.size());
            for (const DensityMatrix &p : probes) {
                result.probes.push_back(p.matrix());
            }
        }
    }
    return result;
}

} // namespace pgtomo
