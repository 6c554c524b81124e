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

#include "qsensor/analysis.hpp"

#include <cmath>
#include <fstream>

#include "qsensor/closed_form.hpp"
#include "qsensor/estimate.hpp"
#include "qsensor/realization.hpp"
#include "qsensor/sta.hpp"
#include "qsensor/symca.hpp"

namespace qsensor {

using ojson = nlohmann::ordered_json;

namespace {

// STA solves dim^2 unknowns densely; past this order the scan is skipped.
constexpr int kStaOrderCap = 16;
constexpr double kOracleTol = 1e-8;

void flatten(const ojson &j, const std::string &prefix, std::string &out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
        return;
    }
    if (j.is_array()) {
        bool scalars = true;
        for (const auto &e : j) {
            scalars &= !e.is_structured();
        }
        if (scalars) {
            out += prefix + ":";
            for (const auto &e : j) {
                out += " " + (e.is_string() ? e.get<std::string>() : e.dump());
            }
            out += "\n";
            return;
        }
        for (size_t i = 0; i < j.size(); i++) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
        }
        return;
    }
    out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
}

StateSpaceModel model_for(const RunConfig &c) {
    validate(c);
    return build_scheme(c.scheme, c.n_chain, c.initial);
}

Binding binding_for(const StateSpaceModel &model, const RunConfig &c, const char *stream) {
    if (c.has_truth()) {
        return binding_from_names(model, c.h_values);
    }
    return Rng(c.seed).split(stream).binding(model.n_params());
}

ojson binding_json(const StateSpaceModel &model, const Binding &h) {
    ojson j = ojson::object();
    for (int i = 0; i < model.n_params(); i++) {
        j[model.params()[i]] = h[i];
    }
    return j;
}

bool zero_output(const StateSpaceModel &model) {
    bool b = true, c = true;
    for (const auto &v : model.b) {
        b &= sgn(v) == 0;
    }
    for (const auto &v : model.c) {
        c &= sgn(v) == 0;
    }
    return b || c;
}

std::string incapable_verdict(const StateSpaceModel &model) {
    return model.hamiltonian.layout.sensor_qubits == 1 ? "incapable: x0=0" : "incapable: orthogonal initial states";
}

ojson config_json(const RunConfig &c, const StateSpaceModel &model) {
    ojson j;
    j["scheme"] = c.scheme;
    j["sensor_qubits"] = model.hamiltonian.layout.sensor_qubits;
    j["n_chain"] = c.n_chain;
    j["initial"] = model.initial.label(model.hamiltonian.layout);
    j["measurement"] = render(model.measurement, model.hamiltonian.layout);
    j["seed"] = c.seed;
    j["known"] = c.known_params;
    ojson fixed = ojson::array();
    for (int i = 0; i < model.n_params(); i++) {
        if (model.hamiltonian.known[i]) {
            fixed.push_back(model.params()[i]);
        }
    }
    // The identifiability scan holds these fixed regardless of `known`.
    j["scan_known"] = fixed;
    return j;
}

std::string groebner_verdict(const StateSpaceModel &model, const Binding &h, ojson *detail) {
    RingPtr theta = theta_ring(model, MonomialOrder::Lex);
    int np = model.n_params();
    std::vector<QPoly> sym = symbolic_markov(model, 2 * np);
    ExactBinding exact;
    for (double v : h) {
        exact.push_back(Rational(v));
    }
    std::vector<QPoly> eqs;
    for (int k = 1; k < 2 * np; k += 2) {
        Rational vk = evaluate(sym[k], exact);
        eqs.push_back(substitute_theta(sym[k], theta) - QPoly::constant(theta, vk));
        (*detail)["markov_equations"].push_back(substitute_theta(sym[k], theta).str() + " = v" +
                                                std::to_string(k));
    }
    SolveResult sol = solve_identifiability(eqs, squared_flags(theta));
    (*detail)["basis_size"] = sol.basis.generators.size();
    (*detail)["solutions"] = sol.solutions.size();
    return solve_verdict_name(sol.verdict);
}

}  // namespace

std::string render_text(const ojson &data) {
    std::string out;
    flatten(data, "", out);
    return out;
}

std::string Report::json() const {
    return data.dump(2) + "\n";
}

std::string Report::text() const {
    std::string out = render_text(data);
    for (const auto &w : warnings) {
        out += "warning: " + w + "\n";
    }
    return out;
}

Report cmd_analyze(const RunConfig &config) {
    StateSpaceModel model = model_for(config);
    Report r;
    r.data["command"] = "analyze";
    r.data["config"] = config_json(config, model);
    r.data["dim"] = model.dim;
    bool orth = orthogonality_check(model.basis, model.initial);
    r.data["x0_orthogonal"] = orth;
    if (zero_output(model)) {
        r.data["output_identically_zero"] = true;
        r.data["verdict"] = incapable_verdict(model);
        return r;
    }
    r.data["output_identically_zero"] = false;
    Binding h = binding_for(model, config, "analyze");
    r.data["binding"] = binding_json(model, h);
    RankReport cr = controllability_rank(model, h);
    RankReport orank = observability_rank(model, h);
    MinimalRealization mr = kalman_minimal(model, h);
    r.data["controllability_rank"] = cr.rank;
    r.data["observability_rank"] = orank.rank;
    r.data["rank_method"] = cr.exact ? "exact" : "svd";
    r.data["minimal_order"] = mr.order;
    r.data["pbh_zero_deficient"] = pbh_test(model, h, 0.0).deficient;

    std::string verdict = "undetermined";
    if (mr.order <= kStaOrderCap) {
        ScanReport scan = identifiability_scan(config.scheme, config.n_chain, config.trials, config.seed,
                                               config.perturbations);
        ojson s;
        s["trials"] = scan.trials;
        s["sign_flip_checks"] = scan.sign_flip_checks;
        s["sign_flip_failures"] = scan.sign_flip_failures;
        s["perturbation_checks"] = scan.perturbation_checks;
        s["perturbation_failures"] = scan.perturbation_failures;
        s["worst_equivalent_residual"] = scan.worst_equivalent_residual;
        s["min_inequivalent_residual"] = scan.min_inequivalent_residual;
        s["verdict"] = scan.identifiable_in_magnitude ? "identifiable in magnitude" : "not certified";
        r.data["sta"] = s;
        verdict = scan.identifiable_in_magnitude ? "identifiable in magnitude" : "not identifiable";
    } else {
        r.data["sta"]["verdict"] = "skipped: minimal order above " + std::to_string(kStaOrderCap);
    }
    if (config.scheme == "g2" && config.n_chain == 2) {
        ojson g;
        std::string v = groebner_verdict(model, h, &g);
        g["verdict"] = v;
        r.data["groebner"] = g;
    }
    r.data["verdict"] = verdict;
    r.data["work"]["sta_solves"] = r.data["sta"].value("sign_flip_checks", 0) + r.data["sta"].value("perturbation_checks", 0);
    return r;
}

Report cmd_simulate(const RunConfig &config) {
    StateSpaceModel model = model_for(config);
    if (!config.has_truth()) {
        throw Error(ErrorCode::InvalidArgument, "simulate needs ground-truth parameter values");
    }
    if (config.record_path.empty()) {
        throw Error(ErrorCode::InvalidArgument, "simulate needs an output record path");
    }
    Binding h = binding_from_names(model, config.h_values);
    MeasurementRecord rec = simulate_record(model, h, config.dt, config.count, config.noise_sigma, config.seed);
    write_record(rec, config.record_path);
    Report r;
    r.data["command"] = "simulate";
    r.data["config"] = config_json(config, model);
    r.data["binding"] = binding_json(model, h);
    r.data["record"] = config.record_path;
    r.data["samples"] = rec.values.size();
    r.data["dt"] = rec.dt;
    r.data["noise_sigma"] = rec.noise_sigma;
    r.data["spectral_bound"] = gershgorin_bound(model, h);
    double peak = 0;
    for (double v : rec.values) {
        peak = std::max(peak, std::abs(v));
    }
    r.data["max_abs_value"] = peak;
    if (zero_output(model)) {
        r.warnings.push_back(incapable_verdict(model) + "; the record is all zeros");
    }
    return r;
}

Report cmd_estimate(const RunConfig &config, const std::string &record_path) {
    StateSpaceModel model = model_for(config);
    MeasurementRecord rec = read_record(record_path);
    Recovery rc = recover_parameters(rec, config.scheme, config.n_chain);
    Report r;
    r.data["command"] = "estimate";
    r.data["config"] = config_json(config, model);
    r.data["record"] = record_path;
    r.data["method"] = rc.method;
    r.data["era"]["order"] = rc.era.order;
    r.data["era"]["data_order"] = rc.era.data_order;
    r.data["era"]["hankel"] = {rc.era.hankel_rows, rc.era.hankel_cols};
    std::vector<double> lead(rc.era.singular_values.begin(),
                             rc.era.singular_values.begin() +
                                 std::min<size_t>(rc.era.singular_values.size(), rc.era.order + 2));
    r.data["era"]["leading_singular_values"] = lead;
    std::vector<double> fit = era_markov(rc.era, static_cast<int>(rec.values.size()));
    double sq = 0;
    for (size_t k = 0; k < fit.size(); k++) {
        sq += (fit[k] - rec.values[k]) * (fit[k] - rec.values[k]);
    }
    r.data["residuals"]["fit_rms"] = std::sqrt(sq / fit.size());
    r.data["invariants"] = rc.invariants;
    ojson mags = ojson::object();
    for (size_t i = 0; i < rc.names.size(); i++) {
        mags[rc.names[i]] = rc.magnitudes[i];
    }
    r.data["magnitudes"] = mags;
    if (config.has_truth()) {
        Binding h = binding_from_names(model, config.h_values);
        ojson err = ojson::object();
        double worst = 0;
        for (size_t i = 0; i < rc.names.size(); i++) {
            double e = std::abs(rc.magnitudes[i] - std::abs(h[i]));
            err[rc.names[i]] = e;
            worst = std::max(worst, e);
        }
        r.data["abs_errors"] = err;
        r.data["max_abs_error"] = worst;
    }
    if (!rc.note.empty()) {
        r.data["note"] = rc.note;
    }
    return r;
}

Report cmd_oracle_check(const RunConfig &config) {
    StateSpaceModel model = model_for(config);
    if (model.hamiltonian.n_qubits() > kMaxDenseQubits) {
        throw Error(ErrorCode::SizeCap, "oracle check limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    Report r;
    r.data["command"] = "oracle-check";
    r.data["config"] = config_json(config, model);
    Binding h = binding_for(model, config, "oracle");
    r.data["binding"] = binding_json(model, h);
    std::vector<double> times;
    for (int k = 0; k < 50; k++) {
        times.push_back(10.0 * k / 49);
    }
    std::vector<double> ym = impulse_response(model, h, times);
    std::vector<double> yq = exact_quantum_expectation(model.hamiltonian, h, model.initial, model.measurement, times);
    double worst = 0;
    for (size_t k = 0; k < times.size(); k++) {
        worst = std::max(worst, std::abs(ym[k] - yq[k]));
    }
    r.data["model_vs_quantum"]["max_abs_diff"] = worst;
    r.data["model_vs_quantum"]["pass"] = worst <= kOracleTol;
    if (worst > kOracleTol) {
        r.exit_code = 4;
    }

    Rng rng = Rng(config.seed).split("closed-forms");
    ojson cm = ojson::array();
    for (int n = 2; n <= 5; n++) {
        StateSpaceModel g1 = build_scheme("g1", n);
        ExactBinding hq = rng.rational_binding(g1.n_params());
        Rational got = exact_det(controllability_matrix(evaluate_exact(g1, hq)));
        Rational want = cm_det_closed_form(n, hq);
        ojson line;
        line["N"] = n;
        line["computed"] = got.get_str();
        line["closed_form"] = want.get_str();
        line["status"] = got == want ? "equal" : (got == -want ? "opposite sign" : "mismatch");
        cm.push_back(line);
        if (got != want && got != -want) {
            r.exit_code = 4;
        }
    }
    r.data["det_cm"] = cm;
    ojson l4 = ojson::array();
    for (int n : {3, 5}) {
        StateSpaceModel g1 = build_scheme("g1", n);
        ExactBinding hq = rng.rational_binding(g1.n_params());
        SptArtifacts s = spt_minimal(g1, hq);
        auto inv = p_bar_inv_last_column_closed_form(n, hq);
        auto at = a_tilde_last_column_closed_form(n, hq);
        bool col_ok = true, at_ok = true;
        for (int i = 0; i <= n; i++) {
            col_ok &= s.p_bar_inv(i, n) == inv[i];
            at_ok &= s.a_tilde(i, n) == at[i];
        }
        ojson line;
        line["N"] = n;
        line["det_p_bar"] = s.det_p_bar == p_bar_det_closed_form(n, hq) ? "equal" : "mismatch";
        line["p_bar_inv_last_column"] = col_ok ? "equal" : "mismatch";
        line["a_tilde_last_column"] = at_ok ? "equal" : "mismatch";
        if (s.det_p_bar != p_bar_det_closed_form(n, hq) || !col_ok || !at_ok) {
            r.exit_code = 4;
        }
        l4.push_back(line);
    }
    r.data["spt_closed_forms"] = l4;
    return r;
}

}  // namespace qsensor
