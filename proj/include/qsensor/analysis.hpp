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

#include <string>
#include <vector>

#include "json.hpp"
#include "qsensor/config.hpp"

namespace qsensor {

/// Command result. `data` is the machine-readable form; text() renders the same values.
struct Report {
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;
    int exit_code = 0;

    std::string json() const;
    std::string text() const;
};

/// Renders a machine-readable report as text.
std::string render_text(const nlohmann::ordered_json &data);

Report cmd_analyze(const RunConfig &config);
/// Writes config.record_path (required).
Report cmd_simulate(const RunConfig &config);
Report cmd_estimate(const RunConfig &config, const std::string &record_path);
Report cmd_oracle_check(const RunConfig &config);

}  // namespace qsensor
