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
#include <cstdint>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pgtomo/errors.hpp"
#include "pgtomo/gates.hpp"
#include "pgtomo/measurement.hpp"
#include "pgtomo/operator_core.hpp"
#include "pgtomo/process_estimation.hpp"
#include "pgtomo/rng.hpp"
#include "test_util.hpp"

using namespace pgtomo;
using test_util::max_abs_diff;

namespace {

// |0><0|, |1><1|, |+><+|, |+i><+i|: a textbook informationally complete set.
std::vector<DensityMatrix> axis_probes() {
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    Matrix one = Matrix::Zero(2, 2);
    one(1, 1) = 1.0;
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    Matrix plus_i(2, 2);
    plus_i << 0.5, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.5;
    return {DensityMatrix(zero), DensityMatrix(one), DensityMatrix(plus),
            DensityMatrix(plus_i)};
}

Matrix matrix_unit(Eigen::Index d, Eigen::Index n, Eigen::Index m) {
    Matrix unit = Matrix::Zero(d, d);
    unit(n, m) = 1.0;
    return unit;
}

// Direct check that sum_k C^k_{n,m} rho_k rebuilds every matrix unit.
void check_reconstruction(const CoefficientTensor &coeffs,
                          const std::vector<DensityMatrix> &probes,
                          double tol) {
    const Eigen::Index d = coeffs.d_in;
    for (Eigen::Index n = 0; n < d; ++n) {
        for (Eigen::Index m = 0; m < d; ++m) {
            Matrix rebuilt = Matrix::Zero(d, d);
            for (std::size_t k = 0; k < probes.size(); ++k) {
                rebuilt += coeffs.c[k](n, m) * probes[k].matrix();
            }
            CHECK(max_abs_diff(rebuilt, matrix_unit(d, n, m)) < tol);
        }
    }
}

ChoiState bell_choi() { return choi_of_unitary(Matrix::Identity(2, 2)); }

} // namespace

TEST_CASE("decompose_coefficients rebuilds matrix units from tetrahedron") {
    const std::vector<DensityMatrix> probes = tetrahedron_probes();
    const CoefficientTensor coeffs = decompose_coefficients(probes);
    REQUIRE(coeffs.d_in == 2);
    REQUIRE(coeffs.c.size() == 4);
    check_reconstruction(coeffs, probes, 1e-12);

    // Hermitian probes force conjugate symmetry of the coefficients.
    for (const Matrix &ck : coeffs.c) {
        CHECK(max_abs_diff(ck, ck.adjoint()) < 1e-12);
    }
}

TEST_CASE("decompose_coefficients hits frozen values for axis probes") {
    const CoefficientTensor coeffs = decompose_coefficients(axis_probes());
    check_reconstruction(coeffs, axis_probes(), 1e-12);

    // Coefficients of |0><1| across the four probes.
    const Eigen::Index n = 0;
    const Eigen::Index m = 1;
    const Complex expected[4] = {Complex(-0.5, -0.5), Complex(-0.5, -0.5),
                                 Complex(1.0, 0.0), Complex(0.0, 1.0)};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(coeffs.c[k](n, m) - expected[k]) < 1e-12);
    }
}

TEST_CASE("decompose_coefficients handles overcomplete sets") {
    std::vector<DensityMatrix> probes = tetrahedron_probes();
    probes.emplace_back(Matrix(Matrix::Identity(2, 2) / 2.0));
    const CoefficientTensor coeffs = decompose_coefficients(probes);
    REQUIRE(coeffs.c.size() == 5);
    check_reconstruction(coeffs, probes, 1e-12);
}

TEST_CASE("decompose_coefficients rejects deficient sets") {
    std::vector<DensityMatrix> probes = tetrahedron_probes();
    probes.pop_back();
    CHECK_THROWS_AS(decompose_coefficients(probes), MathPreconditionError);

    // Four copies of the same state never span.
    std::vector<DensityMatrix> degenerate(
        4, DensityMatrix(Matrix(Matrix::Identity(2, 2) / 2.0)));
    CHECK_THROWS_AS(decompose_coefficients(degenerate), MathPreconditionError);
}

TEST_CASE("score_factor of the tetrahedron probes") {
    const CoefficientTensor coeffs =
        decompose_coefficients(tetrahedron_probes());
    CHECK(score_factor(coeffs) ==
          Catch::Approx(2.8284271247461903).margin(1e-12));

    const DeltaBound bound = delta_bound(coeffs, 0.03);
    CHECK(bound.score_factor == Catch::Approx(2.8284271247461903));
    CHECK(bound.delta ==
          Catch::Approx(0.03 * 2.8284271247461903 / 2.0).margin(1e-15));
}

TEST_CASE("score_factor of the axis probes") {
    const CoefficientTensor coeffs = decompose_coefficients(axis_probes());
    CHECK(score_factor(coeffs) ==
          Catch::Approx(std::sqrt(18.0)).margin(1e-12));
}

TEST_CASE("score_factor matches a direct double-sum evaluation") {
    rng::Stream stream(41);
    std::vector<DensityMatrix> probes;
    for (int k = 0; k < 4; ++k) {
        probes.push_back(test_util::random_density(2, stream));
    }
    const CoefficientTensor coeffs = decompose_coefficients(probes);

    double total = 0.0;
    for (std::size_t k = 0; k < coeffs.c.size(); ++k) {
        for (std::size_t l = 0; l < coeffs.c.size(); ++l) {
            Complex inner = 0.0;
            for (Eigen::Index n = 0; n < 2; ++n) {
                for (Eigen::Index m = 0; m < 2; ++m) {
                    inner += coeffs.c[k](n, m) * std::conj(coeffs.c[l](n, m));
                }
            }
            total += std::abs(inner);
        }
    }
    CHECK(score_factor(coeffs) ==
          Catch::Approx(std::sqrt(total)).margin(1e-12));
}

TEST_CASE("assemble_choi of exact identity outputs is the Bell state") {
    const std::vector<DensityMatrix> probes = tetrahedron_probes();
    const CoefficientTensor coeffs = decompose_coefficients(probes);
    std::vector<Matrix> outputs;
    for (const DensityMatrix &p : probes) {
        outputs.push_back(p.matrix());
    }
    const Matrix choi = assemble_choi(coeffs, outputs);
    CHECK(max_abs_diff(choi, bell_choi().matrix()) < 1e-12);
    CHECK(std::abs(choi.trace() - Complex(1.0)) < 1e-12);
}

TEST_CASE("assembly recovers random physical Choi states from exact outputs") {
    rng::Stream stream(42);
    const std::vector<DensityMatrix> probes = tetrahedron_probes();
    const CoefficientTensor coeffs = decompose_coefficients(probes);
    for (int kraus : {1, 2, 4}) {
        const ChoiState truth = test_util::random_choi(2, 2, kraus, stream);
        std::vector<Matrix> outputs;
        for (const DensityMatrix &p : probes) {
            outputs.push_back(apply_choi(truth, p.matrix()));
        }
        const Matrix rebuilt = assemble_choi(coeffs, outputs);
        CHECK(max_abs_diff(rebuilt, truth.matrix()) < 1e-9);
    }
}

TEST_CASE("apply_choi reproduces known channels") {
    rng::Stream stream(43);
    const Matrix rho = test_util::random_density(2, stream).matrix();

    SECTION("identity") {
        CHECK(max_abs_diff(apply_choi(bell_choi(), rho), rho) < 1e-12);
    }
    SECTION("unitary") {
        const Matrix u = test_util::random_unitary(2, stream);
        const Matrix out = apply_choi(choi_of_unitary(u), rho);
        CHECK(max_abs_diff(out, u * rho * u.adjoint()) < 1e-12);
    }
    SECTION("depolarizing") {
        const double p = 0.3;
        const Matrix out = apply_choi(choi_of_depolarizing(p), rho);
        const Matrix expected =
            (1.0 - p) * rho + p * Matrix::Identity(2, 2) / 2.0;
        CHECK(max_abs_diff(out, expected) < 1e-12);
    }
    SECTION("trace preservation on random channels") {
        const ChoiState choi = test_util::random_choi(2, 3, 2, stream);
        const Matrix out = apply_choi(choi, rho);
        REQUIRE(out.rows() == 3);
        CHECK(std::abs(out.trace() - Complex(1.0)) < 1e-12);
    }
}

TEST_CASE("ChoiState validates physicality") {
    CHECK_NOTHROW(bell_choi());

    SECTION("not PSD") {
        Matrix bad = bell_choi().matrix();
        bad(1, 1) += 0.2;
        bad(0, 0) -= 0.2;
        bad(1, 2) = 0.4;
        bad(2, 1) = 0.4;
        CHECK_THROWS_AS(ChoiState(bad, 2, 2), MathPreconditionError);
    }
    SECTION("wrong output partial trace") {
        // Unit trace and PSD, but tr_out != I/2.
        Matrix bad = Matrix::Zero(4, 4);
        bad(0, 0) = 1.0;
        CHECK_THROWS_AS(ChoiState(bad, 2, 2), MathPreconditionError);
    }
    SECTION("not Hermitian") {
        Matrix bad = bell_choi().matrix();
        bad(0, 3) += Complex(0.0, 0.1);
        CHECK_THROWS_AS(ChoiState(bad, 2, 2), MathPreconditionError);
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(ChoiState(bell_choi().matrix(), 2, 3),
                        std::invalid_argument);
    }
}

TEST_CASE("project_physical fixes unphysical assemblies") {
    rng::Stream stream(44);
    for (int rep = 0; rep < 10; ++rep) {
        // Hermitian, unit trace, wrong partial trace and indefinite.
        Matrix g = test_util::random_ginibre(4, 4, stream);
        Matrix h = (g + g.adjoint()) / 2.0;
        h -= Matrix::Identity(4, 4) * (h.trace().real() - 1.0) / 4.0;

        const ProjectionResult result = project_physical(h, 2, 2);
        const EigenSystem sys = hermitian_eig(result.matrix);
        CHECK(sys.values.minCoeff() >= -1e-8);
        const Matrix reduced =
            partial_trace(result.matrix, 2, 2, Subsystem::first);
        CHECK(max_abs_diff(reduced, Matrix::Identity(2, 2) / 2.0) < 1e-8);
        CHECK(result.iterations >= 1);
        CHECK(result.psd_residual <= 1e-8);
    }
}

TEST_CASE("project_physical leaves physical inputs unchanged") {
    rng::Stream stream(45);
    const ChoiState truth = test_util::random_choi(2, 2, 3, stream);
    const ProjectionResult result = project_physical(truth.matrix(), 2, 2);
    CHECK(max_abs_diff(result.matrix, truth.matrix()) < 1e-8);
}

TEST_CASE("project_physical is idempotent") {
    rng::Stream stream(46);
    Matrix g = test_util::random_ginibre(4, 4, stream);
    Matrix h = (g + g.adjoint()) / 2.0;
    h -= Matrix::Identity(4, 4) * (h.trace().real() - 1.0) / 4.0;

    const ProjectionResult once = project_physical(h, 2, 2);
    const ProjectionResult twice = project_physical(once.matrix, 2, 2);
    CHECK(max_abs_diff(once.matrix, twice.matrix) < 1e-8);
}

TEST_CASE("project_physical beats random physical candidates") {
    rng::Stream stream(47);
    Matrix g = test_util::random_ginibre(4, 4, stream);
    Matrix h = (g + g.adjoint()) / 2.0;
    h -= Matrix::Identity(4, 4) * (h.trace().real() - 1.0) / 4.0;

    const ProjectionResult result = project_physical(h, 2, 2);
    const double best = hs_distance(h, result.matrix);
    for (int cand = 0; cand < 500; ++cand) {
        const ChoiState candidate = test_util::random_choi(2, 2, 4, stream);
        CHECK(best <= hs_distance(h, candidate.matrix()) + 1e-9);
    }
}

TEST_CASE("process_target_bound composes distance and Delta") {
    const Matrix ideal = bell_choi().matrix();
    Matrix shifted = ideal;
    shifted(1, 1) += 0.1;
    shifted(0, 0) -= 0.1;
    const ProcessTargetBound bound =
        process_target_bound(shifted, ideal, 0.04);
    CHECK(bound.distance == Catch::Approx(0.1).margin(1e-12));
    CHECK(bound.delta_tilde == Catch::Approx(0.14).margin(1e-12));
}

TEST_CASE("run_process_tomography simulates the identity channel") {
    const std::vector<DensityMatrix> probes = tetrahedron_probes();
    const std::vector<Povm> povms = calibrated_povms();
    ProcessTomographyOptions options;
    options.request.cl = 0.87;
    options.target = bell_choi().matrix();

    const ProcessTomographyResult result = run_process_tomography(
        bell_choi(), probes, povms, 8192, 11, options);

    REQUIRE(result.probe_runs.size() == 4);
    CHECK(result.certificate.n_total_per_probe == 3 * 8192);
    CHECK(result.certificate.delta_state ==
          Catch::Approx(0.030135154082274896).margin(2e-9));
    CHECK(result.certificate.score_factor ==
          Catch::Approx(2.8284271247461903).margin(1e-12));
    CHECK(result.certificate.delta ==
          Catch::Approx(result.certificate.delta_state *
                        result.certificate.score_factor / 2.0));
    REQUIRE(result.certificate.delta_tilde.has_value());

    // 8192 shots per setting land the reconstruction near the truth.
    const double dist = hs_distance(result.choi.matrix(), bell_choi().matrix());
    CHECK(dist < 0.05);
    CHECK(*result.certificate.delta_tilde ==
          Catch::Approx(result.certificate.delta + dist).margin(1e-12));
}

TEST_CASE("simulation and record overloads agree") {
    const std::vector<DensityMatrix> probes = tetrahedron_probes();
    const std::vector<Povm> povms = calibrated_povms();
    ProcessTomographyOptions options;
    options.request.cl = 0.87;

    const std::uint64_t seed = 19;
    const ProcessTomographyResult simulated = run_process_tomography(
        bell_choi(), probes, povms, 4096, seed, options);

    std::vector<MeasurementRecord> records;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const Matrix out = apply_choi(bell_choi(), probes[k].matrix());
        records.push_back(simulate_counts(DensityMatrix(out), povms, 4096,
                                          rng::substream_seed(seed, k)));
    }
    const ProcessTomographyResult replayed =
        run_process_tomography(records, probes, povms, options);

    CHECK(max_abs_diff(simulated.choi.matrix(), replayed.choi.matrix()) == 0.0);
    CHECK(simulated.certificate.delta == replayed.certificate.delta);
}

TEST_CASE("run_process_tomography validates record shape") {
    const std::vector<DensityMatrix> probes = tetrahedron_probes();
    const std::vector<Povm> povms = calibrated_povms();
    ProcessTomographyOptions options;
    options.request.cl = 0.87;

    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    const MeasurementRecord one =
        simulate_counts(DensityMatrix(rho), povms, 1024, 1);

    SECTION("record count mismatch") {
        std::vector<MeasurementRecord> records(3, one);
        CHECK_THROWS_AS(run_process_tomography(records, probes, povms, options),
                        InputFormatError);
    }
    SECTION("mixed shot totals") {
        std::vector<MeasurementRecord> records(4, one);
        records[2] = simulate_counts(DensityMatrix(rho), povms, 2048, 1);
        CHECK_THROWS_AS(run_process_tomography(records, probes, povms, options),
                        InputFormatError);
    }
}

TEST_CASE("probe_search is deterministic and self-consistent") {
    const ProbeSearchResult first = probe_search(2, 4, 200, 5);
    const ProbeSearchResult second = probe_search(2, 4, 200, 5);
    CHECK(first.best_score == second.best_score);
    REQUIRE(first.probes.size() == 4);
    CHECK(first.trials_evaluated + first.trials_skipped == 200);

    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(max_abs_diff(first.probes[k], second.probes[k]) == 0.0);
    }

    // The reported score belongs to the reported probes.
    std::vector<DensityMatrix> winners;
    for (const Matrix &p : first.probes) {
        winners.emplace_back(p);
    }
    CHECK(score_factor(decompose_coefficients(winners)) ==
          Catch::Approx(first.best_score).margin(1e-12));

    CHECK(first.best_score >= 2.0 - 1e-6);
}

TEST_CASE("probe_search validates its arguments") {
    CHECK_THROWS_AS(probe_search(1, 4, 10, 0), InputFormatError);
    CHECK_THROWS_AS(probe_search(2, 3, 10, 0), InputFormatError);
    CHECK_THROWS_AS(probe_search(2, 4, 0, 0), InputFormatError);
}
