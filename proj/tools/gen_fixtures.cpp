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
 * Regenerates the repository fixture files (fixtures/*.json) from the
 * embedded reference experiment. Run from the repository root, or pass the
 * output directory as the single argument.
 */

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgtomo/fixtures.hpp"
#include "pgtomo/gates.hpp"
#include "pgtomo/json_io.hpp"
#include "pgtomo/measurement.hpp"
#include "pgtomo/operator_core.hpp"

using nlohmann::json;

namespace {

json matrix_json(const pgtomo::Matrix &m) {
    return json::parse(pgtomo::render_matrix(m));
}

void write(const std::filesystem::path &path, const json &j) {
    pgtomo::write_text_atomic(path, j.dump(2) + "\n");
    std::cout << "wrote " << path.string() << "\n";
}

} // namespace

int main(int argc, char **argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);

    const pgtomo::ReferenceExperiment &ref = pgtomo::reference_experiment();

    json povms = json::array();
    for (const pgtomo::Povm &povm : pgtomo::calibrated_povms()) {
        json effects = json::array();
        for (const pgtomo::Matrix &effect : povm.effects()) {
            effects.push_back(matrix_json(effect));
        }
        povms.push_back(json{{"effects", std::move(effects)}});
    }
    write(dir / "povms.json", json{{"povms", std::move(povms)}});

    json probes = json::array();
    for (const pgtomo::DensityMatrix &probe : pgtomo::tetrahedron_probes()) {
        probes.push_back(matrix_json(probe.matrix()));
    }
    write(dir / "probes.json", json{{"probes", std::move(probes)}});

    json states = json::array();
    for (const pgtomo::DensityMatrix &state : ref.output_states) {
        states.push_back(matrix_json(state.matrix()));
    }
    write(dir / "table1.json",
          json{{"states", std::move(states)},
               {"distances", ref.published_distances},
               {"delta", ref.delta},
               {"cl", ref.cl},
               {"shots_per_setting", ref.shots_per_setting}});

    write(dir / "table2.json",
          json{{"choi_raw", matrix_json(ref.choi_published_raw)},
               {"choi_symmetrized", matrix_json(ref.choi_published)},
               {"delta_tilde", ref.published_delta_tilde}});

    return 0;
}
