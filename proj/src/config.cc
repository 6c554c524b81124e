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

#include "qsensor/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qsensor/accessible.hpp"
#include "qsensor/error.hpp"

namespace qsensor {

namespace pt = boost::property_tree;

namespace {

template <class T>
T read_value(const pt::ptree &node, const std::string &where) {
    try {
        return node.get_value<T>();
    } catch (const pt::ptree_bad_data &) {
        throw Error(ErrorCode::Parse, "bad value for " + where + ": '" + node.data() + "'");
    }
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        if (a != std::string::npos) {
            out.push_back(item.substr(a, b - a + 1));
        }
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string &text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw Error(ErrorCode::Parse, std::string("config: ") + e.what());
    }
    RunConfig c;
    for (const auto &[section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw Error(ErrorCode::Parse, "config: key '" + section + "' outside a section");
        }
        for (const auto &[key, node] : body) {
            std::string where = section + "." + key;
            if (section == "sensor") {
                if (key == "qubits") {
                    c.sensor_qubits = read_value<int>(node, where);
                } else if (key == "scheme") {
                    c.scheme = node.data();
                } else if (key == "initial") {
                    c.initial = node.data();
                } else if (key == "n_chain") {
                    c.n_chain = read_value<int>(node, where);
                } else {
                    throw Error(ErrorCode::Parse, "config: unknown key " + where);
                }
            } else if (section == "parameters") {
                if (key == "known") {
                    c.known_params = split_list(node.data());
                } else {
                    c.h_values.emplace_back(key, read_value<double>(node, where));
                }
            } else if (section == "simulation") {
                if (key == "dt") {
                    c.dt = read_value<double>(node, where);
                } else if (key == "count") {
                    c.count = read_value<int>(node, where);
                } else if (key == "noise_sigma") {
                    c.noise_sigma = read_value<double>(node, where);
                } else if (key == "seed") {
                    c.seed = read_value<uint64_t>(node, where);
                } else {
                    throw Error(ErrorCode::Parse, "config: unknown key " + where);
                }
            } else if (section == "analysis") {
                if (key == "trials") {
                    c.trials = read_value<int>(node, where);
                } else if (key == "perturbations") {
                    c.perturbations = read_value<int>(node, where);
                } else {
                    throw Error(ErrorCode::Parse, "config: unknown key " + where);
                }
            } else if (section == "output") {
                if (key == "record") {
                    c.record_path = node.data();
                } else if (key == "report") {
                    c.report_path = node.data();
                } else if (key == "json") {
                    c.json_path = node.data();
                } else {
                    throw Error(ErrorCode::Parse, "config: unknown key " + where);
                }
            } else {
                throw Error(ErrorCode::Parse, "config: unknown section [" + section + "]");
            }
        }
    }
    return c;
}

RunConfig load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw Error(ErrorCode::InvalidArgument, "cannot read config " + path);
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const RunConfig &c) {
    std::ostringstream out;
    out.precision(17);
    out << "[sensor]\n";
    if (c.sensor_qubits) {
        out << "qubits = " << c.sensor_qubits << "\n";
    }
    out << "scheme = " << c.scheme << "\n";
    if (!c.initial.empty()) {
        out << "initial = " << c.initial << "\n";
    }
    out << "n_chain = " << c.n_chain << "\n\n[parameters]\n";
    for (const auto &[k, v] : c.h_values) {
        out << k << " = " << v << "\n";
    }
    out << "known = ";
    for (size_t i = 0; i < c.known_params.size(); i++) {
        out << (i ? "," : "") << c.known_params[i];
    }
    out << "\n\n[simulation]\ndt = " << c.dt << "\ncount = " << c.count << "\nnoise_sigma = " << c.noise_sigma
        << "\nseed = " << c.seed << "\n\n[analysis]\ntrials = " << c.trials
        << "\nperturbations = " << c.perturbations << "\n";
    if (!c.record_path.empty() || !c.report_path.empty() || !c.json_path.empty()) {
        out << "\n[output]\n";
        if (!c.record_path.empty()) {
            out << "record = " << c.record_path << "\n";
        }
        if (!c.report_path.empty()) {
            out << "report = " << c.report_path << "\n";
        }
        if (!c.json_path.empty()) {
            out << "json = " << c.json_path << "\n";
        }
    }
    return out.str();
}

void validate(const RunConfig &c) {
    const SchemeInfo &info = scheme_info(c.scheme);
    if (c.sensor_qubits != 0 && c.sensor_qubits != info.sensor_qubits) {
        throw Error(ErrorCode::Inadmissible, "scheme " + c.scheme + " needs a " + std::to_string(info.sensor_qubits) +
                                                 "-qubit sensor, config says " + std::to_string(c.sensor_qubits));
    }
    if (!c.initial.empty() && !is_admissible(c.scheme, c.initial)) {
        std::string allowed;
        for (const auto &s : info.admissible_initial) {
            allowed += (allowed.empty() ? "" : ", ") + s;
        }
        throw Error(ErrorCode::Inadmissible, "initial state '" + c.initial + "' is not admissible for " + c.scheme +
                                                 " (allowed: " + allowed + ")");
    }
    if (c.n_chain < 1 || c.n_chain > 40) {
        throw Error(ErrorCode::InvalidArgument, "n_chain must be in 1..40");
    }
    if (!(c.dt > 0) || c.count < 1 || !(c.noise_sigma >= 0)) {
        throw Error(ErrorCode::InvalidArgument, "need dt > 0, count >= 1, noise_sigma >= 0");
    }
    if (c.trials < 1 || c.perturbations < 0) {
        throw Error(ErrorCode::InvalidArgument, "need trials >= 1 and perturbations >= 0");
    }
    std::set<std::string> seen;
    for (const auto &[k, v] : c.h_values) {
        if (!seen.insert(k).second) {
            throw Error(ErrorCode::InvalidArgument, "parameter " + k + " given twice");
        }
    }
}

}  // namespace qsensor
