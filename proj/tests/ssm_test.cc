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

#include "qsensor/ssm.hpp"

#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "qsensor/estimate.hpp"
#include "qsensor/rng.hpp"

using namespace qsensor;

namespace {

// Reference 24x24 matrix for the Ya Zb scheme at N = 2; a = ha, b = hb, 1 = h1.
const char *kReferenceYaZb[24] = {
    "0 -a 0 -b 0 b 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "a 0 b 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "0 -b 0 -a 0 0 a 0 0 -1 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "b 0 a 0 -b 0 0 -a 0 0 -1 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 b 0 -b 0 0 -a 0 0 1 0 -1 0 0 0 0 0 0 0 0 0 0",
    "-b 0 0 0 b 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0",
    "0 0 -a 0 0 0 0 0 a 0 0 0 0 0 0 -1 0 0 0 0 0 0 0 0",
    "0 0 0 a 0 0 -a 0 -b 0 0 0 0 0 0 0 -1 0 0 0 0 0 0 0",
    "0 0 0 0 a 0 0 b 0 0 0 0 0 0 0 0 0 1 0 -1 0 0 0 0",
    "0 0 1 0 0 0 0 0 0 0 -a 0 0 0 0 a 0 0 0 0 0 0 0 0",
    "0 0 0 1 0 0 0 0 0 a 0 b 0 0 0 0 -a 0 0 0 0 0 0 0",
    "0 0 0 0 -1 0 0 0 0 0 -b 0 1 0 0 0 0 -a 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 -1 0 1 0 0 0 0 -a 0 0 0 0 0",
    "0 0 0 0 1 0 0 0 0 0 0 0 -1 0 b 0 0 0 0 -a 0 0 0 0",
    "0 0 0 0 0 -1 0 0 0 0 0 0 0 -b 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 1 0 0 -a 0 0 0 0 0 0 a 0 0 0 -b 0 0 0",
    "0 0 0 0 0 0 0 1 0 0 a 0 0 0 0 -a 0 b 0 0 0 -b 0 0",
    "0 0 0 0 0 0 0 0 -1 0 0 a 0 0 0 0 -b 0 1 0 0 0 b 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 a 0 0 0 0 -1 0 1 0 0 0 -b",
    "0 0 0 0 0 0 0 0 1 0 0 0 0 a 0 0 0 0 -1 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 b 0 0 0 0 0 a 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 b 0 0 0 -a 0 -b 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 -b 0 0 0 b 0 1",
    "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 -b 0 0 0 -1 0",
};

std::vector<std::vector<std::string>> token_matrix(const StateSpaceModel &m) {
    const std::map<std::string, std::string> shorthand = {{"ha", "a"}, {"hb", "b"}, {"h1", "1"}};
    std::vector<std::vector<std::string>> out(m.dim, std::vector<std::string>(m.dim, "0"));
    for (const auto &e : m.a_entries) {
        EXPECT_TRUE(e.coeff == 1 || e.coeff == -1);
        out[e.row][e.col] = (e.coeff < 0 ? "-" : "") + shorthand.at(m.params()[e.param]);
    }
    return out;
}

}  // namespace

TEST(ssm, a_is_antisymmetric) {
    Rng rng(2);
    for (const auto &info : scheme_catalog()) {
        auto m = build_scheme(info.id, 3, info.admissible_initial.back());
        auto nm = evaluate(m, rng.binding(m.n_params()));
        EXPECT_LT((nm.a + nm.a.transpose()).norm(), 1e-14) << info.id;
    }
}

TEST(ssm, chain_model_is_tridiagonal) {
    auto m = build_scheme("g1", 4);
    ASSERT_EQ(m.dim, 6);
    for (const auto &e : m.a_entries) {
        EXPECT_EQ(std::abs(e.row - e.col), 1);
        int upper = std::min(e.row, e.col);
        EXPECT_EQ(e.param, upper);
        EXPECT_EQ(e.coeff, e.col > e.row ? 1 : -1);
    }
    EXPECT_EQ(m.b[0], 1);
    EXPECT_EQ(m.c[1], 1);
}

TEST(ssm, reference_yz_matrix_differs_in_three_cells) {
    auto m = build_scheme("g2", 2);
    ASSERT_EQ(m.dim, 24);
    auto ours = token_matrix(m);
    std::vector<std::pair<int, int>> diffs;
    for (int i = 0; i < 24; i++) {
        std::istringstream row(kReferenceYaZb[i]);
        for (int j = 0; j < 24; j++) {
            std::string tok;
            row >> tok;
            if (tok != ours[i][j]) {
                diffs.emplace_back(i + 1, j + 1);
            }
        }
    }
    std::vector<std::pair<int, int>> want = {{7, 8}, {7, 9}, {19, 24}};
    EXPECT_EQ(diffs, want);
    EXPECT_EQ(ours[6][7], "a");
    EXPECT_EQ(ours[18][23], "b");
    // Antisymmetry pins the corrected cells against the reference transposes.
    EXPECT_EQ(ours[7][6], "-a");
    EXPECT_EQ(ours[8][6], "0");
    EXPECT_EQ(ours[23][18], "-b");
    EXPECT_EQ(m.b[1], 1);
    EXPECT_EQ(m.c[0], 1);
}

TEST(ssm, impulse_matches_quantum) {
    Rng rng(21);
    auto m = build_scheme("g1", 2);
    auto h = rng.binding(m.n_params());
    std::vector<double> ts = {0, 0.3, 1.7, 4.2, 9.9};
    auto y = impulse_response(m, h, ts);
    auto q = exact_quantum_expectation(m.hamiltonian, h, m.initial, m.measurement, ts);
    for (size_t k = 0; k < ts.size(); k++) {
        EXPECT_NEAR(y[k], q[k], 1e-8);
    }
    EXPECT_EQ(y[0], 0.0);
}

TEST(ssm, markov_parameters_are_derivatives) {
    Rng rng(4);
    auto m = build_scheme("g2", 2);
    auto h = rng.binding(m.n_params());
    auto mk = markov_parameters(m, h, 3);
    EXPECT_EQ(mk[0], 0.0);
    EXPECT_NEAR(mk[1], -h[0], 1e-14);
    // central difference of y at 0 against CAB
    double eps = 1e-4;
    auto y = impulse_response(m, h, {eps, 2 * eps});
    EXPECT_NEAR((4 * y[0] - y[1]) / (2 * eps), mk[1], 1e-6);
}

TEST(ssm, exact_and_numeric_evaluation_agree) {
    Rng rng(6);
    auto m = build_scheme("g1", 3);
    auto hq = rng.rational_binding(m.n_params());
    Binding h;
    for (const auto &v : hq) {
        h.push_back(v.get_d());
    }
    EXPECT_LT((evaluate_exact(m, hq).a.to_double() - evaluate(m, h).a).norm(), 1e-15);
    EXPECT_THROW(evaluate(m, Binding{1.0}), Error);
}

TEST(ssm, gershgorin_bounds_spectrum) {
    Rng rng(8);
    auto m = build_scheme("g2", 2);
    auto h = rng.binding(m.n_params());
    auto nm = evaluate(m, h);
    Eigen::EigenSolver<Eigen::MatrixXd> es(nm.a);
    double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    EXPECT_LE(rho, gershgorin_bound(m, h) + 1e-12);
}

TEST(ssm, dump_is_stable) {
    auto m = build_scheme("g1", 2);
    std::string d = dump(m);
    EXPECT_EQ(d, dump(build_scheme("g1", 2)));
    EXPECT_NE(d.find("dim 4"), std::string::npos);
}

TEST(ssm, binding_by_name) {
    auto m = build_scheme("g1", 2);
    auto h = binding_from_names(m, {{"h1", 3}, {"ha", 1}, {"hb", 2}});
    EXPECT_EQ(h, (Binding{1, 2, 3}));
    EXPECT_THROW(binding_from_names(m, {{"ha", 1}}), Error);
    EXPECT_THROW(build_scheme("g2", 2, "xa"), Error);
}
