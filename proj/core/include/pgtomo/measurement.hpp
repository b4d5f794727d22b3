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
 * POVM measurements: effect decomposition over the operator basis, design
 * matrix construction with its left inverse, Born-rule probabilities, and a
 * seeded deterministic count simulator.
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pgtomo/operator_core.hpp"

namespace pgtomo {

/// Positive operator-valued measure: effects are PSD (within 1e-10) and sum
/// to the identity (within 1e-10). Checked at construction.
class Povm {
  public:
    explicit Povm(std::vector<Matrix> effects);

    const std::vector<Matrix> &effects() const { return effects_; }
    Eigen::Index dim() const { return effects_.front().rows(); }
    std::size_t num_outcomes() const { return effects_.size(); }

  private:
    std::vector<Matrix> effects_;
};

/// Coefficients of one effect over {I/d, lambda_i}: effect = a0 * I + (a, lambda).
struct EffectDecomposition {
    double a0 = 0.0;
    RealVector a;
};

/// Stacked decomposition of a measurement set. Row r of `a` (and entry r of
/// `a0`) belongs to outcome row_index[r].second of setting row_index[r].first;
/// setting j occupies rows [setting_offset[j], setting_offset[j+1]).
struct DesignMatrix {
    int dim = 0;
    Eigen::MatrixXd a;            // rows x (dim^2 - 1)
    Eigen::VectorXd a0;           // per row
    Eigen::MatrixXd left_inverse; // (dim^2 - 1) x rows, (A^T A)^{-1} A^T
    std::vector<std::pair<std::size_t, std::size_t>> row_index;
    std::vector<std::size_t> setting_offset; // size J + 1
    double condition_number = 0.0;           // cond(A^T A)
};

/// Outcome counts n_m^(j) per setting with shot totals n^(j).
struct MeasurementRecord {
    std::vector<std::vector<std::uint64_t>> counts; // [setting][outcome]
    std::vector<std::uint64_t> shots;               // per setting

    std::uint64_t total_shots() const;
};

/// Decomposes one effect: a0 = tr(effect)/dim, a_i = tr(effect lambda_i)/2.
EffectDecomposition povm_decompose(const Matrix &effect,
                                   const OperatorBasis &basis);

/// Stacks the decompositions of all effects into the design matrix and its
/// left inverse. Throws MathPreconditionError when the set is not
/// informationally complete (cond(A^T A) above 1e12).
DesignMatrix build_design(const std::vector<Povm> &povms,
                          const OperatorBasis &basis);

/// Born-rule outcome probabilities tr(rho Pi_m), with roundoff-scale
/// negatives clipped to zero.
Eigen::VectorXd born_probabilities(const DensityMatrix &rho, const Povm &povm);

/// Draws categorical outcome counts for every setting. Setting j consumes
/// the sub-stream rng::substream_seed(seed, j), so results do not depend on
/// evaluation order and identical (inputs, seed) reproduce identical records
/// everywhere.
MeasurementRecord simulate_counts(const DensityMatrix &rho,
                                  const std::vector<Povm> &povms,
                                  const std::vector<std::uint64_t> &shots,
                                  std::uint64_t seed);
MeasurementRecord simulate_counts(const DensityMatrix &rho,
                                  const std::vector<Povm> &povms,
                                  std::uint64_t shots_per_setting,
                                  std::uint64_t seed);

/// Checks that a record's shape matches the measurement set and that row
/// sums equal the shot totals (all positive). Throws InputFormatError.
void validate_record(const MeasurementRecord &record,
                     const std::vector<Povm> &povms);

/// Per-setting outcome frequencies n_m^(j) / n^(j).
std::vector<Eigen::VectorXd> frequencies(const MeasurementRecord &record);

} // namespace pgtomo
