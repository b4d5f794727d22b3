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

#include "pgtomo/state_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pgtomo/errors.hpp"

namespace pgtomo {

namespace {

constexpr double kTraceTol = 1e-8;
constexpr double kBisectionTol = 1e-9;
constexpr double kBisectionUpper = 10.0;

Eigen::VectorXd stack_frequencies(const std::vector<Eigen::VectorXd> &freqs,
                                  const DesignMatrix &design) {
    if (freqs.size() + 1 != design.setting_offset.size()) {
        throw InputFormatError(
            "lls_estimate: frequency list does not match the design matrix");
    }
    Eigen::VectorXd stacked(design.a.rows());
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        const std::size_t begin = design.setting_offset[j];
        const std::size_t end = design.setting_offset[j + 1];
        if (static_cast<std::size_t>(freqs[j].size()) != end - begin) {
            throw InputFormatError("lls_estimate: setting " + std::to_string(j) +
                                   " has mismatched outcome arity");
        }
        stacked.segment(static_cast<Eigen::Index>(begin),
                        static_cast<Eigen::Index>(end - begin)) = freqs[j];
    }
    return stacked;
}

} // namespace

LlsEstimate lls_estimate(const std::vector<Eigen::VectorXd> &freqs,
                         const DesignMatrix &design,
                         const OperatorBasis &basis) {
    if (basis.dim != design.dim) {
        throw std::invalid_argument("lls_estimate: basis dimension mismatch");
    }
    const Eigen::VectorXd f = stack_frequencies(freqs, design);
    LlsEstimate out;
    out.s.dim = design.dim;
    out.s.coeffs = design.left_inverse * (f - design.a0);
    out.rho = bloch_to_density(out.s).matrix;
    return out;
}

LlsEstimate lls_estimate(const MeasurementRecord &record,
                         const DesignMatrix &design,
                         const OperatorBasis &basis) {
    return lls_estimate(frequencies(record), design, basis);
}

DensityMatrix enm_project(const Matrix &rho_lls, EnmMode mode) {
    if (rho_lls.rows() != rho_lls.cols()) {
        throw std::invalid_argument("enm_project: matrix is not square");
    }
    if (std::abs(rho_lls.trace() - Complex(1.0, 0.0)) > kTraceTol) {
        throw std::invalid_argument("enm_project: input trace differs from one");
    }
    const EigenSystem eig = hermitian_eig(rho_lls);
    const Eigen::Index n = eig.values.size();
    Eigen::VectorXd lambda(n);

    if (mode == EnmMode::hs_projection) {
        // Euclidean projection of the (descending) eigenvalues onto the
        // probability simplex.
        double cumulative = 0.0;
        double shift = 0.0;
        Eigen::Index support = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            cumulative += eig.values(i);
            const double candidate =
                (1.0 - cumulative) / static_cast<double>(i + 1);
            if (eig.values(i) + candidate > 0.0) {
                shift = candidate;
                support = i + 1;
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            lambda(i) = (i < support) ? std::max(0.0, eig.values(i) + shift) : 0.0;
        }
    } else {
        double positive_trace = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            lambda(i) = std::max(0.0, eig.values(i));
            positive_trace += lambda(i);
        }
        if (positive_trace <= 0.0) {
            throw MathPreconditionError(
                "enm_project: no positive eigenvalues to renormalize");
        }
        lambda /= positive_trace;
    }

    Matrix rho = eig.vectors * lambda.asDiagonal() * eig.vectors.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix(rho);
}

Eigen::VectorXd compute_c_alphas(const DesignMatrix &design,
                                 const std::vector<std::uint64_t> &shots) {
    if (shots.size() + 1 != design.setting_offset.size()) {
        throw InputFormatError(
            "compute_c_alphas: shot list does not match the design matrix");
    }
    std::uint64_t n_total = 0;
    for (std::uint64_t n : shots) {
        if (n == 0) {
            throw InputFormatError("compute_c_alphas: zero shots in a setting");
        }
        n_total += n;
    }
    const Eigen::Index num_alphas = design.left_inverse.rows();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(num_alphas);
    for (std::size_t j = 0; j < shots.size(); ++j) {
        const double r =
            static_cast<double>(n_total) / static_cast<double>(shots[j]);
        const Eigen::Index begin =
            static_cast<Eigen::Index>(design.setting_offset[j]);
        const Eigen::Index width =
            static_cast<Eigen::Index>(design.setting_offset[j + 1]) - begin;
        for (Eigen::Index alpha = 0; alpha < num_alphas; ++alpha) {
            const auto row = design.left_inverse.row(alpha).segment(begin, width);
            const double spread = row.maxCoeff() - row.minCoeff();
            c(alpha) += r * spread * spread;
        }
    }
    return c;
}

double confidence_level_raw(double delta, std::uint64_t n_total,
                            const Eigen::VectorXd &c_alphas, int dim) {
    if (n_total == 0) {
        throw std::invalid_argument("confidence_level: no shots");
    }
    const double dof = static_cast<double>(dim) * dim - 1.0;
    double tail = 0.0;
    for (Eigen::Index alpha = 0; alpha < c_alphas.size(); ++alpha) {
        tail += std::exp(-8.0 * delta * delta * static_cast<double>(n_total) /
                         (dof * c_alphas(alpha)));
    }
    return 1.0 - 2.0 * tail;
}

double confidence_level(double delta, std::uint64_t n_total,
                        const Eigen::VectorXd &c_alphas, int dim) {
    return std::max(0.0, confidence_level_raw(delta, n_total, c_alphas, dim));
}

double delta_for_cl(double target_cl, std::uint64_t n_total,
                    const Eigen::VectorXd &c_alphas, int dim) {
    if (!(target_cl > 0.0) || !(target_cl < 1.0)) {
        throw InputFormatError("delta_for_cl: confidence level must lie in (0, 1)");
    }
    double lo = 0.0;
    double hi = kBisectionUpper;
    if (confidence_level_raw(hi, n_total, c_alphas, dim) < target_cl) {
        throw MathPreconditionError(
            "delta_for_cl: confidence level unreachable within bracket");
    }
    while (hi - lo > kBisectionTol) {
        const double mid = 0.5 * (lo + hi);
        if (confidence_level_raw(mid, n_total, c_alphas, dim) >= target_cl) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

StateTargetBound state_target_bound(const Matrix &rho_enm,
                                    const Matrix &rho_target, double delta) {
    StateTargetBound bound;
    bound.delta0 = hs_distance(rho_enm, rho_target);
    bound.delta_tilde = delta + bound.delta0;
    return bound;
}

StateTomographyResult run_state_tomography(
    const std::vector<Eigen::VectorXd> &freqs,
    const std::vector<std::uint64_t> &shots, const std::vector<Povm> &povms,
    const StateTomographyOptions &options) {
    const bool has_cl = options.request.cl.has_value();
    const bool has_delta = options.request.delta.has_value();
    if (has_cl == has_delta) {
        throw InputFormatError(
            "run_state_tomography: exactly one of cl and delta must be given");
    }
    if (povms.empty()) {
        throw InputFormatError("run_state_tomography: empty measurement set");
    }

    const OperatorBasis basis = gell_mann_basis(static_cast<int>(povms[0].dim()));
    const DesignMatrix design = build_design(povms, basis);

    PrecisionCertificate cert;
    cert.c_alphas = compute_c_alphas(design, shots);
    cert.n_total = 0;
    for (std::uint64_t n : shots) {
        cert.n_total += n;
    }
    if (has_cl) {
        cert.delta = delta_for_cl(*options.request.cl, cert.n_total,
                                  cert.c_alphas, design.dim);
    } else {
        if (*options.request.delta < 0.0) {
            throw InputFormatError("run_state_tomography: delta must be >= 0");
        }
        cert.delta = *options.request.delta;
    }
    cert.cl_raw =
        confidence_level_raw(cert.delta, cert.n_total, cert.c_alphas, design.dim);
    cert.cl = std::max(0.0, cert.cl_raw);

    LlsEstimate lls = lls_estimate(freqs, design, basis);
    DensityMatrix rho_enm = enm_project(lls.rho, options.mode);
    StateEstimate estimate{std::move(lls), std::move(rho_enm), options.mode};

    if (options.target.has_value()) {
        const StateTargetBound bound = state_target_bound(
            estimate.rho_enm.matrix(), *options.target, cert.delta);
        cert.delta0 = bound.delta0;
        cert.delta_tilde = bound.delta_tilde;
    }
    return StateTomographyResult{std::move(estimate), std::move(cert)};
}

StateTomographyResult run_state_tomography(const MeasurementRecord &record,
                                           const std::vector<Povm> &povms,
                                           const StateTomographyOptions &options) {
    validate_record(record, povms);
    return run_state_tomography(frequencies(record), record.shots, povms,
                                options);
}

} // namespace pgtomo
