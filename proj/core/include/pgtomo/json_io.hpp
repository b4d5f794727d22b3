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
 * JSON file formats.
 *
 * Matrix encoding (used everywhere a matrix appears):
 *   {"dim": d, "entries": [[[re, im], ...], ...]}   row-major, d x d.
 * POVM sets:     {"povms": [{"effects": [matrix, ...]}, ...]}
 * Counts:        {"shots": [n_1, ...], "counts": [[c, ...], ...]}
 * Count bundles: {"runs": [counts-object, ...]}   one per probe
 * Probe sets:    {"probes": [matrix, ...]}
 *
 * Malformed data raises InputFormatError; structurally valid but unphysical
 * states raise MathPreconditionError. Report renderers are deterministic
 * (sorted keys, shortest round-trip number formatting) so identical inputs
 * produce byte-identical files; writes go to a temporary file first and are
 * renamed into place.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pgtomo/measurement.hpp"
#include "pgtomo/operator_core.hpp"
#include "pgtomo/process_estimation.hpp"
#include "pgtomo/state_estimation.hpp"

namespace pgtomo {

Matrix parse_matrix(const std::string &text);
std::string render_matrix(const Matrix &m);

Matrix read_matrix(const std::filesystem::path &path);
DensityMatrix read_state(const std::filesystem::path &path);
std::vector<Povm> read_povms(const std::filesystem::path &path);
MeasurementRecord read_counts(const std::filesystem::path &path);
std::vector<MeasurementRecord> read_counts_bundle(const std::filesystem::path &path);
std::vector<DensityMatrix> read_probes(const std::filesystem::path &path);

std::string render_state_report(const StateTomographyResult &result);
std::string render_process_report(const ProcessTomographyResult &result);
std::string render_probe_score_report(double score, int d_in,
                                      std::size_t num_probes,
                                      std::optional<double> delta_state);
std::string render_probe_search_report(const ProbeSearchResult &result,
                                       int d_in, int num_probes,
                                       std::uint64_t trials,
                                       std::uint64_t seed);

/// Writes to `path` + ".tmp" and renames into place.
void write_text_atomic(const std::filesystem::path &path,
                       const std::string &text);

} // namespace pgtomo
