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

// Acceptance runner: `acceptance K` checks criterion K, `acceptance` checks all ten.
// One line per criterion; exit status 1 if any checked criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "qsensor/closed_form.hpp"
#include "qsensor/estimate.hpp"
#include "qsensor/realization.hpp"
#include "qsensor/sta.hpp"
#include "qsensor/symca.hpp"

using namespace qsensor;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

Outcome oracle_equivalence() {
    Rng root(101);
    double worst = 0;
    int cases = 0;
    std::vector<double> times;
    for (int k = 0; k < 50; k++) {
        times.push_back(10.0 * k / 49);
    }
    for (const auto &info : scheme_catalog()) {
        for (const auto &init : info.admissible_initial) {
            for (int n = 2; n <= 4; n++) {
                StateSpaceModel m = build_scheme(info.id, n, init);
                Rng rng = root.split(info.id + init + std::to_string(n));
                for (int b = 0; b < 10; b++) {
                    Binding h = rng.binding(m.n_params());
                    auto y = impulse_response(m, h, times);
                    auto q = exact_quantum_expectation(m.hamiltonian, h, m.initial, m.measurement, times);
                    for (size_t k = 0; k < times.size(); k++) {
                        worst = std::max(worst, std::abs(y[k] - q[k]));
                    }
                    cases++;
                }
            }
        }
    }
    return {worst <= 1e-8, fmt("%d bindings, max |model - quantum| = %.3g", cases, worst)};
}

Outcome zero_output() {
    Rng rng(102);
    std::vector<double> times;
    for (int k = 0; k < 50; k++) {
        times.push_back(10.0 * k / 49);
    }
    int cases = 0;
    bool ok = true;
    double worst = 0;
    for (const char *scheme : {"t1", "t2", "g3", "g4", "g5", "g6"}) {
        for (const auto &init : scheme_info(scheme).admissible_initial) {
            for (int n = 2; n <= 4; n++) {
                StateSpaceModel m = build_scheme(scheme, n, init);
                for (const auto &b : m.b) {
                    ok = ok && b == 0;
                }
                ok = ok && orthogonality_check(m.basis, m.initial);
                Binding h = rng.binding(m.n_params());
                auto y = impulse_response(m, h, times);
                auto q = exact_quantum_expectation(m.hamiltonian, h, m.initial, m.measurement, times);
                for (size_t k = 0; k < times.size(); k++) {
                    ok = ok && y[k] == 0.0;
                    worst = std::max(worst, std::abs(q[k]));
                }
                cases++;
            }
        }
    }
    ok = ok && worst <= 1e-12;
    return {ok, fmt("%d models with x0 = 0 and model output 0; max quantum |y| = %.3g", cases, worst)};
}

Outcome cm_determinant() {
    Rng root(103);
    int equal = 0, negated = 0, total = 0;
    for (int n = 2; n <= 6; n++) {
        StateSpaceModel m = build_scheme("g1", n);
        Rng rng = root.split(n);
        for (int b = 0; b < 10; b++) {
            ExactBinding h = rng.rational_binding(m.n_params());
            Rational d = exact_det(controllability_matrix(evaluate_exact(m, h)));
            Rational f = cm_det_closed_form(n, h);
            equal += d == f;
            negated += d == -f;
            total++;
        }
    }
    return {equal == total, fmt("%d/%d equal to the closed form, %d/%d equal to its negation", equal, total, negated,
                                total)};
}

Outcome observability_ranks() {
    Rng root(104);
    bool ok = true;
    std::string detail;
    for (int n = 2; n <= 7; n++) {
        StateSpaceModel m = build_scheme("g1", n);
        Rng rng = root.split(n);
        int want = n % 2 == 0 ? m.dim : m.dim - 1;
        bool all_exact = true;
        bool pbh_ok = true;
        for (int b = 0; b < 5; b++) {
            Binding h = rng.binding(m.n_params());
            RankReport r = observability_rank(m, h);
            ok = ok && r.rank == want;
            all_exact = all_exact && r.exact;
            pbh_ok = pbh_ok && pbh_test(m, h, 0.0).deficient == (n % 2 == 1);
        }
        ok = ok && pbh_ok;
        detail += fmt("%sN=%d rank %d/%d%s%s", detail.empty() ? "" : ", ", n, want, m.dim, all_exact ? " exact" : " svd",
                      pbh_ok ? "" : " pbh-mismatch");
    }
    return {ok, detail + "; PBH at 0 deficient exactly for odd N"};
}

Outcome reduction_closed_forms() {
    Rng root(105);
    int checked = 0, failed = 0;
    for (int n : {3, 5, 7}) {
        StateSpaceModel m = build_scheme("g1", n);
        Rng rng = root.split(n);
        for (int b = 0; b < 20; b++) {
            ExactBinding h = rng.rational_binding(m.n_params());
            SptArtifacts s = spt_minimal(m, h);
            auto pv = p_vec_closed_form(n, h);
            auto inv = p_bar_inv_last_column_closed_form(n, h);
            auto at = a_tilde_last_column_closed_form(n, h);
            bool ok = s.det_p_bar == p_bar_det_closed_form(n, h);
            for (int i = 0; i <= n; i++) {
                ok = ok && s.p_vec(i, 0) == pv[i] && s.p_bar_inv(i, n) == inv[i] && s.a_tilde(i, n) == at[i];
            }
            failed += !ok;
            checked++;
        }
    }
    return {failed == 0, fmt("%d/%d rational bindings match all four closed forms", checked - failed, checked)};
}

Outcome generic_sta() {
    bool ok = true;
    std::string detail;
    int flips = 0, perturbed = 0;
    double worst_eq = 0, min_ineq = 1e300;
    for (int n = 2; n <= 5; n++) {
        ScanReport r = identifiability_scan("g1", n, 20, 106, 20);
        ok = ok && !r.vacuous && r.identifiable_in_magnitude && r.sign_flip_failures == 0 &&
             r.perturbation_failures == 0 && r.worst_off_diagonal <= 1e-8 && r.min_perturbation >= 0.05;
        flips += r.sign_flip_checks;
        perturbed += r.perturbation_checks;
        worst_eq = std::max(worst_eq, r.worst_equivalent_residual);
        min_ineq = std::min(min_ineq, r.min_inequivalent_residual);
        if (r.sign_flip_failures || r.perturbation_failures) {
            detail += fmt(" N=%d failures %d/%d", n, r.sign_flip_failures, r.perturbation_failures);
        }
    }
    return {ok, fmt("%d sign flips certified (worst residual %.3g), %d perturbations rejected (min residual %.3g)",
                    flips, worst_eq, perturbed, min_ineq) +
                    detail};
}

Outcome parametric_basis() {
    auto full = make_ring({"t1", "t2", "t3", "v1", "v2", "v3"}, MonomialOrder::Lex);
    auto unknowns = make_ring({"t1", "t2", "t3"}, MonomialOrder::Lex);
    auto coeffs = make_ring({"v1", "v2", "v3"});
    set_parameter_ring(coeffs);
    std::vector<Poly<RatFunc>> eqs;
    for (const char *s : {"t1 - v1", "10*t1^3 + 7*t1*t2 + 11*t1*t3 - v2", "11*(t1^2 + t2 + t3) - v3"}) {
        eqs.push_back(split_coefficients(parse_poly(s, full), unknowns, coeffs));
    }
    GroebnerBasis<RatFunc> g = buchberger(eqs, unknowns);
    std::vector<RatFunc> want = {
        RatFunc(parse_poly("v1", coeffs)),
        RatFunc(parse_poly("-v1^3 + v1*v3 - v2", coeffs), parse_poly("4*v1", coeffs)),
        RatFunc(parse_poly("-33*v1^3 - 7*v1*v3 + 11*v2", coeffs), parse_poly("44*v1", coeffs)),
    };
    int matched = 0;
    for (int i = 0; i < 3; i++) {
        auto expect = Poly<RatFunc>::variable(unknowns, i) - Poly<RatFunc>::constant(unknowns, want[i]);
        for (const auto &p : g.generators) {
            if (p == expect) {
                matched++;
                break;
            }
        }
    }
    bool ok = g.generators.size() == 3 && matched == 3;
    std::string detail = fmt("basis of %zu generators, %d/3 equal t_i - a_i(v)", g.generators.size(), matched);
    return {ok, detail};
}

Outcome transfer_fingerprints() {
    Rng rng(108);
    StateSpaceModel m = build_scheme("g2", 2);
    bool ok = true;
    double worst_rel = 0;
    int orders_ok = 0;
    const int trials = 10;
    for (int b = 0; b < trials; b++) {
        Binding h = rng.binding(3);
        MinimalRealization k = kalman_minimal(m, h);
        orders_ok += k.order == 12;
        NumericTransfer t = numeric_transfer(NumericModel{k.a_min, k.b_min, k.c_min});
        double want = 11 * (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
        if (t.denominator.size() == 13) {
            worst_rel = std::max(worst_rel, std::abs(t.denominator[10] - want) / want);
        } else {
            ok = false;
        }
        auto mk = markov_parameters(m, h, 2);
        ok = ok && mk[0] == 0.0 && std::abs(std::abs(mk[1]) - std::abs(h[0])) <= 1e-14;
    }
    ok = ok && orders_ok == trials && worst_rel <= 1e-8;
    return {ok, fmt("minimal order 12 at %d/%d bindings, s^10 coefficient rel err %.3g, first Markov parameter -ha",
                    orders_ok, trials, worst_rel)};
}

double max_abs_err(const std::vector<double> &got, const Binding &truth) {
    double e = 0;
    for (size_t i = 0; i < truth.size(); i++) {
        e = std::max(e, std::abs(got[i] - std::abs(truth[i])));
    }
    return e;
}

Outcome end_to_end() {
    Rng root(109);
    double worst_clean = 0;
    bool clean_ok = true;
    struct Case {
        const char *scheme;
        int n;
        int count;
    };
    for (auto c : {Case{"g2", 2, 1000}, Case{"g1", 2, 400}, Case{"g1", 3, 400}, Case{"g1", 4, 400},
                   Case{"g1", 5, 400}}) {
        StateSpaceModel m = build_scheme(c.scheme, c.n);
        Rng rng = root.split(std::string(c.scheme) + std::to_string(c.n));
        Binding h;
        for (int i = 0; i < m.n_params(); i++) {
            h.push_back(rng.uniform(0.5, 1.2) * (rng.coin() ? 1 : -1));
        }
        try {
            Recovery r = recover_parameters(simulate_record(m, h, 0.1, c.count, 0, 1), c.scheme, c.n);
            worst_clean = std::max(worst_clean, max_abs_err(r.magnitudes, h));
        } catch (const Error &) {
            clean_ok = false;
        }
    }
    clean_ok = clean_ok && worst_clean <= 1e-6;

    StateSpaceModel g2 = build_scheme("g2", 2);
    Rng truths = root.split("noisy");
    int good = 0;
    const int trials = 100;
    for (int t = 0; t < trials; t++) {
        Binding h;
        for (int i = 0; i < 3; i++) {
            h.push_back(truths.uniform(0.5, 1.2));
        }
        try {
            Recovery r = recover_parameters(simulate_record(g2, h, 0.1, 1000, 1e-3, 1000 + t), "g2", 2);
            double rel = 0;
            for (int i = 0; i < 3; i++) {
                rel = std::max(rel, std::abs(r.magnitudes[i] - h[i]) / h[i]);
            }
            good += rel < 0.01;
        } catch (const Error &) {
        }
    }
    return {clean_ok && good >= 95, fmt("noiseless max |error| %.3g%s; noisy trials within 1%%: %d/%d", worst_clean,
                                        clean_ok ? "" : " (failed)", good, trials)};
}

Outcome set_sizes() {
    bool ok = true;
    std::string detail = "g2";
    for (int n = 1; n <= 6; n++) {
        int got = generate_scheme("g2", n).size();
        ok = ok && got == g2_size(n);
        detail += fmt(" %d", got);
    }
    detail += "; g1";
    for (int n = 1; n <= 8; n++) {
        int got = generate_scheme("g1", n).size();
        ok = ok && got == n + 2;
        detail += fmt(" %d", got);
    }
    return {ok, detail};
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<std::function<Outcome()>> criteria = {
        oracle_equivalence, zero_output,     cm_determinant,        observability_ranks, reduction_closed_forms,
        generic_sta,        parametric_basis, transfer_fingerprints, end_to_end,          set_sizes,
    };
    std::vector<int> which;
    if (argc > 1) {
        int k = std::atoi(argv[1]);
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "usage: acceptance [1-10]\n");
            return 2;
        }
        which.push_back(k);
    } else {
        for (size_t k = 1; k <= criteria.size(); k++) {
            which.push_back(static_cast<int>(k));
        }
    }
    bool all = true;
    for (int k : which) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const Error &e) {
            o = {false, std::string("error (") + error_code_name(e.code()) + "): " + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d %s: %s [%.1fs]\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
