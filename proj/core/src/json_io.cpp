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

#include "pgtomo/json_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "pgtomo/errors.hpp"

namespace pgtomo {

namespace {

using nlohmann::json;

json parse_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputFormatError("cannot open file: " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw InputFormatError("invalid JSON in " + path.string() + ": " +
                               e.what());
    }
}

json matrix_to_json(const Matrix &m) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        entries.push_back(std::move(row));
    }
    return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json &j) {
    try {
        const auto dim = j.at("dim").get<Eigen::Index>();
        if (dim < 1) {
            throw InputFormatError("matrix: dim must be positive");
        }
        const json &entries = j.at("entries");
        if (!entries.is_array() ||
            entries.size() != static_cast<std::size_t>(dim)) {
            throw InputFormatError("matrix: entries row count differs from dim");
        }
        Matrix m(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            const json &row = entries.at(static_cast<std::size_t>(r));
            if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
                throw InputFormatError("matrix: entries column count differs from dim");
            }
            for (Eigen::Index c = 0; c < dim; ++c) {
                const json &cell = row.at(static_cast<std::size_t>(c));
                if (!cell.is_array() || cell.size() != 2) {
                    throw InputFormatError("matrix: each entry must be [re, im]");
                }
                m(r, c) = Complex(cell.at(0).get<double>(),
                                  cell.at(1).get<double>());
            }
        }
        return m;
    } catch (const json::exception &e) {
        throw InputFormatError(std::string("matrix: ") + e.what());
    }
}

json real_vector_to_json(const Eigen::VectorXd &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

const char *enm_mode_name(EnmMode mode) {
    return mode == EnmMode::hs_projection ? "hs_projection"
                                          : "truncate_renormalize";
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

std::vector<std::uint64_t> u64_vector(const json &value,
                                      const std::string &context) {
    if (!value.is_array()) {
        throw InputFormatError(context + ": expected an array");
    }
    std::vector<std::uint64_t> out;
    out.reserve(value.size());
    for (const json &el : value) {
        // Negative integers would otherwise wrap through the unsigned cast.
        if (!el.is_number_unsigned()) {
            throw InputFormatError(context +
                                   ": entries must be nonnegative integers");
        }
        out.push_back(el.get<std::uint64_t>());
    }
    return out;
}

MeasurementRecord record_from_json(const json &node,
                                   const std::string &context) {
    MeasurementRecord record;
    record.shots = u64_vector(node.at("shots"), context + ": shots");
    const json &counts = node.at("counts");
    if (!counts.is_array()) {
        throw InputFormatError(context + ": counts must be an array");
    }
    record.counts.reserve(counts.size());
    for (const json &row : counts) {
        record.counts.push_back(u64_vector(row, context + ": counts row"));
    }
    if (record.shots.size() != record.counts.size()) {
        throw InputFormatError(context + ": shots and counts lengths differ");
    }
    return record;
}

} // namespace

Matrix parse_matrix(const std::string &text) {
    try {
        return matrix_from_json(json::parse(text));
    } catch (const json::exception &e) {
        throw InputFormatError(std::string("invalid JSON: ") + e.what());
    }
}

std::string render_matrix(const Matrix &m) { return dump(matrix_to_json(m)); }

Matrix read_matrix(const std::filesystem::path &path) {
    return matrix_from_json(parse_file(path));
}

DensityMatrix read_state(const std::filesystem::path &path) {
    try {
        return DensityMatrix(read_matrix(path));
    } catch (const std::invalid_argument &e) {
        throw MathPreconditionError("state in " + path.string() +
                                    " is not a valid density matrix: " +
                                    e.what());
    }
}

std::vector<Povm> read_povms(const std::filesystem::path &path) {
    const json root = parse_file(path);
    if (!root.is_object() || !root.contains("povms") ||
        !root["povms"].is_array() || root["povms"].empty()) {
        throw InputFormatError("povms file " + path.string() +
                               ": expected a nonempty \"povms\" array");
    }
    std::vector<Povm> povms;
    povms.reserve(root["povms"].size());
    for (const json &entry : root["povms"]) {
        if (!entry.is_object() || !entry.contains("effects") ||
            !entry["effects"].is_array() || entry["effects"].empty()) {
            throw InputFormatError("povms file " + path.string() +
                                   ": each POVM needs a nonempty \"effects\" array");
        }
        std::vector<Matrix> effects;
        effects.reserve(entry["effects"].size());
        for (const json &eff : entry["effects"]) {
            effects.push_back(matrix_from_json(eff));
        }
        povms.emplace_back(std::move(effects));
    }
    return povms;
}

MeasurementRecord read_counts(const std::filesystem::path &path) {
    const json root = parse_file(path);
    try {
        return record_from_json(root, "counts file " + path.string());
    } catch (const json::exception &e) {
        throw InputFormatError("counts file " + path.string() + ": " + e.what());
    }
}

std::vector<MeasurementRecord> read_counts_bundle(
    const std::filesystem::path &path) {
    const json root = parse_file(path);
    if (!root.is_object() || !root.contains("runs") || !root["runs"].is_array() ||
        root["runs"].empty()) {
        throw InputFormatError("counts bundle " + path.string() +
                               ": expected a nonempty \"runs\" array");
    }
    std::vector<MeasurementRecord> records;
    records.reserve(root["runs"].size());
    for (const json &run : root["runs"]) {
        try {
            records.push_back(
                record_from_json(run, "counts bundle " + path.string()));
        } catch (const json::exception &e) {
            throw InputFormatError("counts bundle " + path.string() + ": " +
                                   e.what());
        }
    }
    return records;
}

std::vector<DensityMatrix> read_probes(const std::filesystem::path &path) {
    const json root = parse_file(path);
    if (!root.is_object() || !root.contains("probes") ||
        !root["probes"].is_array() || root["probes"].empty()) {
        throw InputFormatError("probes file " + path.string() +
                               ": expected a nonempty \"probes\" array");
    }
    std::vector<DensityMatrix> probes;
    probes.reserve(root["probes"].size());
    for (const json &entry : root["probes"]) {
        try {
            probes.emplace_back(matrix_from_json(entry));
        } catch (const std::invalid_argument &e) {
            throw MathPreconditionError("probes file " + path.string() +
                                        ": probe is not a valid density "
                                        "matrix: " +
                                        e.what());
        }
    }
    return probes;
}

std::string render_state_report(const StateTomographyResult &result) {
    const PrecisionCertificate &cert = result.certificate;
    json report{{"rho_enm", matrix_to_json(result.estimate.rho_enm.matrix())},
                {"rho_lls", matrix_to_json(result.estimate.lls.rho)},
                {"delta", cert.delta},
                {"cl", cert.cl},
                {"cl_raw", cert.cl_raw},
                {"c_alphas", real_vector_to_json(cert.c_alphas)},
                {"n_total", cert.n_total},
                {"enm_mode", enm_mode_name(result.estimate.mode)}};
    if (cert.delta0.has_value()) {
        report["delta0"] = *cert.delta0;
        report["delta_tilde"] = *cert.delta_tilde;
    }
    return dump(report);
}

std::string render_process_report(const ProcessTomographyResult &result) {
    const ProcessCertificate &cert = result.certificate;
    json report{{"choi_rec", matrix_to_json(result.choi.matrix())},
                {"choi_enm_raw", matrix_to_json(result.choi_raw)},
                {"Delta", cert.delta},
                {"score_factor", cert.score_factor},
                {"delta_state", cert.delta_state},
                {"cl", cert.cl},
                {"cl_raw", cert.cl_raw},
                {"n_total_per_probe", cert.n_total_per_probe},
                {"enm_mode", enm_mode_name(result.probe_runs.empty()
                                               ? EnmMode::hs_projection
                                               : result.probe_runs[0].estimate.mode)},
                {"projection_iterations", result.projection.iterations},
                {"projection_residual", result.projection.psd_residual}};
    if (cert.delta_tilde.has_value()) {
        report["Delta_tilde"] = *cert.delta_tilde;
    }
    return dump(report);
}

std::string render_probe_score_report(double score, int d_in,
                                      std::size_t num_probes,
                                      std::optional<double> delta_state) {
    json report{{"score_factor", score},
                {"d_in", d_in},
                {"num_probes", num_probes}};
    if (delta_state.has_value()) {
        report["delta_state"] = *delta_state;
        report["Delta"] = *delta_state * score / static_cast<double>(d_in);
    }
    return dump(report);
}

std::string render_probe_search_report(const ProbeSearchResult &result,
                                       int d_in, int num_probes,
                                       std::uint64_t trials,
                                       std::uint64_t seed) {
    json probes = json::array();
    for (const Matrix &p : result.probes) {
        probes.push_back(matrix_to_json(p));
    }
    json report{{"best_score_factor", result.best_score},
                {"probes", std::move(probes)},
                {"d_in", d_in},
                {"num_probes", num_probes},
                {"trials", trials},
                {"trials_evaluated", result.trials_evaluated},
                {"trials_skipped", result.trials_skipped},
                {"seed", seed}};
    return dump(report);
}

void write_text_atomic(const std::filesystem::path &path,
                       const std::string &text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InputFormatError("cannot write file: " + tmp.string());
        }
        out << text;
        if (!out) {
            throw InputFormatError("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace pgtomo
