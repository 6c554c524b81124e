// Copyright 2026 The qsensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qsensor {

struct RunConfig {
    int n_chain = 2;
    /// 0 means "take it from the scheme".
    int sensor_qubits = 0;
    std::string scheme = "g1";
    /// Empty selects the scheme's first admissible initial state.
    std::string initial;
    /// Ground truth, by parameter name.
    std::vector<std::pair<std::string, double>> h_values;
    std::vector<std::string> known_params{"ha"};
    double dt = 0.1;
    int count = 400;
    double noise_sigma = 0;
    uint64_t seed = 1;
    int trials = 3;
    int perturbations = 20;
    std::string record_path;
    std::string report_path;
    std::string json_path;

    bool has_truth() const {
        return !h_values.empty();
    }
};

/// Sections [sensor] [parameters] [simulation] [analysis] [output], key = value lines.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);
std::string render_config(const RunConfig &c);

/// Throws Inadmissible for an unknown scheme, a scheme/initial pair outside the catalog or a
/// sensor size that does not match the scheme; InvalidArgument for out-of-range numbers.
void validate(const RunConfig &c);

}  // namespace qsensor
