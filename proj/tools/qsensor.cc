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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qsensor/analysis.hpp"
#include "qsensor/error.hpp"

using namespace qsensor;

namespace {

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::Inadmissible:
        case ErrorCode::InvalidArgument:
        case ErrorCode::Parse:
        case ErrorCode::Unbound:
        case ErrorCode::DimensionMismatch:
            return 2;
        case ErrorCode::Unidentifiable:
            return 3;
        default:
            return 4;
    }
}

struct Flags {
    std::string config_path;
    std::string scheme;
    std::string initial;
    int n_chain = 0;
    int qubits = 0;
    std::vector<std::string> h;
    std::string known;
    double dt = 0;
    int count = 0;
    double noise = -1;
    long long seed = -1;
    int trials = 0;
    int perturbations = -1;
    std::string record;
    std::string out;
    std::string json;
};

void add_common(CLI::App *cmd, Flags &f) {
    cmd->add_option("-c,--config", f.config_path, "key=value config file with sections");
    cmd->add_option("--scheme", f.scheme, "g1..g6, t1, t2");
    cmd->add_option("--initial", f.initial, "xa, xb or xab");
    cmd->add_option("-N,--n-chain", f.n_chain, "chain length");
    cmd->add_option("--qubits", f.qubits, "sensor qubits (1 or 2)");
    cmd->add_option("--set", f.h, "ground truth, name=value (repeatable)");
    cmd->add_option("--known", f.known, "comma separated known parameters");
    cmd->add_option("--dt", f.dt, "sampling interval");
    cmd->add_option("--count", f.count, "number of samples");
    cmd->add_option("--noise", f.noise, "additive noise sigma");
    cmd->add_option("--seed", f.seed, "root seed");
    cmd->add_option("--trials", f.trials, "STA trials");
    cmd->add_option("--perturbations", f.perturbations, "perturbed bindings per trial");
    cmd->add_option("--record", f.record, "record CSV path");
    cmd->add_option("-o,--out", f.out, "write the text report here");
    cmd->add_option("--json", f.json, "write the machine-readable report here");
}

RunConfig resolve(const Flags &f) {
    RunConfig c = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
    if (!f.scheme.empty()) c.scheme = f.scheme;
    if (!f.initial.empty()) c.initial = f.initial;
    if (f.n_chain) c.n_chain = f.n_chain;
    if (f.qubits) c.sensor_qubits = f.qubits;
    if (!f.h.empty()) {
        c.h_values.clear();
        for (const auto &kv : f.h) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw Error(ErrorCode::Parse, "--set expects name=value, got '" + kv + "'");
            }
            try {
                c.h_values.emplace_back(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
            } catch (const std::exception &) {
                throw Error(ErrorCode::Parse, "--set value is not a number: '" + kv + "'");
            }
        }
    }
    if (!f.known.empty()) {
        c.known_params.clear();
        std::stringstream ss(f.known);
        std::string name;
        while (std::getline(ss, name, ',')) {
            c.known_params.push_back(name);
        }
    }
    if (f.dt > 0) c.dt = f.dt;
    if (f.count) c.count = f.count;
    if (f.noise >= 0) c.noise_sigma = f.noise;
    if (f.seed >= 0) c.seed = static_cast<uint64_t>(f.seed);
    if (f.trials) c.trials = f.trials;
    if (f.perturbations >= 0) c.perturbations = f.perturbations;
    if (!f.record.empty()) c.record_path = f.record;
    if (!f.out.empty()) c.report_path = f.out;
    if (!f.json.empty()) c.json_path = f.json;
    return c;
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream o(path, std::ios::binary);
    if (!o) {
        throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    }
    o << text;
}

int emit(const Report &r, const RunConfig &c) {
    std::cout << r.text();
    for (const auto &w : r.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (!c.report_path.empty()) {
        write_file(c.report_path, r.text());
    }
    if (!c.json_path.empty()) {
        write_file(c.json_path, r.json());
    }
    return r.exit_code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Identifiability analysis and parameter recovery for spin chains read through a qubit sensor"};
    app.require_subcommand(1);
    Flags f;
    std::string report_from;
    auto *analyze = app.add_subcommand("analyze", "identifiability verdict for one scheme");
    auto *simulate = app.add_subcommand("simulate", "write a sampled impulse-response record");
    auto *estimate = app.add_subcommand("estimate", "recover coupling magnitudes from a record");
    auto *oracle = app.add_subcommand("oracle-check", "model against exact quantum dynamics and closed forms");
    auto *report = app.add_subcommand("report", "render a machine-readable report as text");
    for (auto *cmd : {analyze, simulate, estimate, oracle}) {
        add_common(cmd, f);
    }
    report->add_option("--from", report_from, "JSON report")->required();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (report->parsed()) {
            std::ifstream in(report_from);
            if (!in) {
                throw Error(ErrorCode::InvalidArgument, "cannot read " + report_from);
            }
            nlohmann::ordered_json data;
            try {
                data = nlohmann::ordered_json::parse(in);
            } catch (const nlohmann::json::parse_error &e) {
                throw Error(ErrorCode::Parse, report_from + ": " + e.what());
            }
            std::cout << render_text(data);
            return 0;
        }
        RunConfig c = resolve(f);
        if (analyze->parsed()) {
            return emit(cmd_analyze(c), c);
        }
        if (simulate->parsed()) {
            return emit(cmd_simulate(c), c);
        }
        if (estimate->parsed()) {
            if (c.record_path.empty()) {
                throw Error(ErrorCode::InvalidArgument, "estimate needs --record");
            }
            return emit(cmd_estimate(c, c.record_path), c);
        }
        return emit(cmd_oracle_check(c), c);
    } catch (const Error &e) {
        std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    }
}
