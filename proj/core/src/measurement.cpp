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

#include "pgtomo/measurement.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pgtomo/errors.hpp"
#include "pgtomo/rng.hpp"

namespace pgtomo {

namespace {

constexpr double kPovmTol = 1e-10;
constexpr double kConditionLimit = 1e12;
constexpr double kProbClipTol = 1e-9;

} // namespace

Povm::Povm(std::vector<Matrix> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) {
        throw MathPreconditionError("Povm: effect list is empty");
    }
    const Eigen::Index d = effects_.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix &e : effects_) {
        if (e.rows() != d || e.cols() != d) {
            throw MathPreconditionError("Povm: effects have mismatched dimensions");
        }
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kPovmTol) {
            throw MathPreconditionError("Povm: effect is not Hermitian");
        }
        if (hermitian_eig(e).values.minCoeff() < -kPovmTol) {
            throw MathPreconditionError("Povm: effect has a negative eigenvalue");
        }
        sum += e;
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kPovmTol) {
        throw MathPreconditionError("Povm: effects do not sum to the identity");
    }
}

std::uint64_t MeasurementRecord::total_shots() const {
    std::uint64_t total = 0;
    for (std::uint64_t n : shots) {
        total += n;
    }
    return total;
}

EffectDecomposition povm_decompose(const Matrix &effect,
                                   const OperatorBasis &basis) {
    if (effect.rows() != effect.cols() || effect.rows() != basis.dim) {
        throw std::invalid_argument("povm_decompose: dimension mismatch");
    }
    EffectDecomposition dec;
    dec.a0 = effect.trace().real() / static_cast<double>(basis.dim);
    dec.a.resize(static_cast<Eigen::Index>(basis.elements.size()));
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        dec.a(static_cast<Eigen::Index>(i)) =
            0.5 * (effect * basis.elements[i]).trace().real();
    }
    return dec;
}

DesignMatrix build_design(const std::vector<Povm> &povms,
                          const OperatorBasis &basis) {
    if (povms.empty()) {
        throw MathPreconditionError("build_design: empty measurement set");
    }
    for (const Povm &p : povms) {
        if (p.dim() != basis.dim) {
            throw std::invalid_argument("build_design: POVM dimension mismatch");
        }
    }

    DesignMatrix design;
    design.dim = basis.dim;
    std::size_t rows = 0;
    for (const Povm &p : povms) {
        rows += p.num_outcomes();
    }
    const Eigen::Index cols = static_cast<Eigen::Index>(basis.elements.size());
    design.a.resize(static_cast<Eigen::Index>(rows), cols);
    design.a0.resize(static_cast<Eigen::Index>(rows));
    design.row_index.reserve(rows);
    design.setting_offset.reserve(povms.size() + 1);

    std::size_t row = 0;
    for (std::size_t j = 0; j < povms.size(); ++j) {
        design.setting_offset.push_back(row);
        for (std::size_t m = 0; m < povms[j].num_outcomes(); ++m, ++row) {
            const EffectDecomposition dec =
                povm_decompose(povms[j].effects()[m], basis);
            design.a.row(static_cast<Eigen::Index>(row)) = dec.a.transpose();
            design.a0(static_cast<Eigen::Index>(row)) = dec.a0;
            design.row_index.emplace_back(j, m);
        }
    }
    design.setting_offset.push_back(row);

    const Eigen::MatrixXd gram = design.a.transpose() * design.a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("build_design: eigensolver failed");
    }
    const double min_eig = solver.eigenvalues().minCoeff();
    const double max_eig = solver.eigenvalues().maxCoeff();
    design.condition_number =
        (min_eig > 0.0) ? max_eig / min_eig
                        : std::numeric_limits<double>::infinity();
    if (!(design.condition_number <= kConditionLimit)) {
        throw MathPreconditionError(
            "build_design: measurement set is not informationally complete "
            "(cond(A^T A) = " +
            std::to_string(design.condition_number) + ")");
    }
    const Eigen::MatrixXd gram_inverse =
        solver.eigenvectors() *
        solver.eigenvalues().cwiseInverse().asDiagonal() *
        solver.eigenvectors().transpose();
    design.left_inverse = gram_inverse * design.a.transpose();
    return design;
}

Eigen::VectorXd born_probabilities(const DensityMatrix &rho, const Povm &povm) {
    if (rho.dim() != povm.dim()) {
        throw std::invalid_argument("born_probabilities: dimension mismatch");
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(povm.num_outcomes()));
    for (std::size_t m = 0; m < povm.num_outcomes(); ++m) {
        double value = (rho.matrix() * povm.effects()[m]).trace().real();
        if (value < 0.0) {
            if (value < -kProbClipTol) {
                throw MathPreconditionError(
                    "born_probabilities: negative outcome probability " +
                    std::to_string(value));
            }
            value = 0.0;
        }
        p(static_cast<Eigen::Index>(m)) = std::min(value, 1.0);
    }
    return p;
}

MeasurementRecord simulate_counts(const DensityMatrix &rho,
                                  const std::vector<Povm> &povms,
                                  const std::vector<std::uint64_t> &shots,
                                  std::uint64_t seed) {
    if (povms.empty()) {
        throw std::invalid_argument("simulate_counts: empty measurement set");
    }
    if (shots.size() != povms.size()) {
        throw InputFormatError("simulate_counts: shot list size differs from "
                               "number of settings");
    }
    MeasurementRecord record;
    record.counts.resize(povms.size());
    record.shots = shots;

    for (std::size_t j = 0; j < povms.size(); ++j) {
        if (shots[j] == 0) {
            throw InputFormatError("simulate_counts: setting " +
                                   std::to_string(j) + " has zero shots");
        }
        const Eigen::VectorXd p = born_probabilities(rho, povms[j]);
        std::vector<double> cumulative(static_cast<std::size_t>(p.size()));
        double acc = 0.0;
        for (Eigen::Index m = 0; m < p.size(); ++m) {
            acc += p(m);
            cumulative[static_cast<std::size_t>(m)] = acc;
        }
        // Guard the last bucket against roundoff so every draw lands.
        cumulative.back() = 1.0;

        rng::Stream stream(rng::substream_seed(seed, j));
        std::vector<std::uint64_t> counts(cumulative.size(), 0);
        for (std::uint64_t shot = 0; shot < shots[j]; ++shot) {
            const double u = stream.next_double();
            const std::size_t outcome = static_cast<std::size_t>(
                std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                cumulative.begin());
            ++counts[std::min(outcome, counts.size() - 1)];
        }
        record.counts[j] = std::move(counts);
    }
    return record;
}

MeasurementRecord simulate_counts(const DensityMatrix &rho,
                                  const std::vector<Povm> &povms,
                                  std::uint64_t shots_per_setting,
                                  std::uint64_t seed) {
    return simulate_counts(
        rho, povms,
        std::vector<std::uint64_t>(povms.size(), shots_per_setting), seed);
}

void validate_record(const MeasurementRecord &record,
                     const std::vector<Povm> &povms) {
    if (record.counts.size() != povms.size() ||
        record.shots.size() != povms.size()) {
        throw InputFormatError(
            "measurement record: number of settings differs from POVM set");
    }
    for (std::size_t j = 0; j < povms.size(); ++j) {
        if (record.counts[j].size() != povms[j].num_outcomes()) {
            throw InputFormatError("measurement record: setting " +
                                   std::to_string(j) +
                                   " has mismatched outcome arity");
        }
        std::uint64_t sum = 0;
        for (std::uint64_t c : record.counts[j]) {
            sum += c;
        }
        if (sum != record.shots[j]) {
            throw InputFormatError("measurement record: counts of setting " +
                                   std::to_string(j) +
                                   " do not sum to its shot total");
        }
        if (record.shots[j] == 0) {
            throw InputFormatError("measurement record: setting " +
                                   std::to_string(j) + " has zero shots");
        }
    }
}

std::vector<Eigen::VectorXd> frequencies(const MeasurementRecord &record) {
    std::vector<Eigen::VectorXd> freqs;
    freqs.reserve(record.counts.size());
    for (std::size_t j = 0; j < record.counts.size(); ++j) {
        if (j >= record.shots.size() || record.shots[j] == 0) {
            throw InputFormatError("frequencies: setting " + std::to_string(j) +
                                   " has zero shots");
        }
        Eigen::VectorXd f(static_cast<Eigen::Index>(record.counts[j].size()));
        for (std::size_t m = 0; m < record.counts[j].size(); ++m) {
            f(static_cast<Eigen::Index>(m)) =
                static_cast<double>(record.counts[j][m]) /
                static_cast<double>(record.shots[j]);
        }
        freqs.push_back(std::move(f));
    }
    return freqs;
}

} // namespace pgtomo
