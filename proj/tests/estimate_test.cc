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

#include "qsensor/estimate.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qsensor/error.hpp"
#include "qsensor/rng.hpp"

using namespace qsensor;

namespace {

double max_err(const std::vector<double> &got, const Binding &truth) {
    double e = 0;
    for (size_t i = 0; i < truth.size(); i++) {
        e = std::max(e, std::abs(got[i] - std::abs(truth[i])));
    }
    return e;
}

}  // namespace

TEST(quantum, output_starts_at_zero) {
    auto m = build_scheme("g1", 3);
    EXPECT_NEAR(exact_quantum_expectation(m.hamiltonian, {1, 0.7, 0.4, 1.2}, m.initial, m.measurement, 0.0), 0.0,
                1e-15);
}

TEST(quantum, single_qubit_sensor_reads_nothing) {
    auto m = build_scheme("t1", 3);
    Rng rng(1);
    auto h = rng.binding(m.n_params());
    for (double t : {0.5, 2.0, 7.5}) {
        EXPECT_LT(std::abs(exact_quantum_expectation(m.hamiltonian, h, m.initial, m.measurement, t)), 1e-12);
    }
}

TEST(quantum, agrees_with_impulse_response) {
    Rng rng(2);
    for (const char *scheme : {"g1", "g2", "g4"}) {
        auto m = build_scheme(scheme, 2);
        auto h = rng.binding(m.n_params());
        std::vector<double> ts;
        for (int k = 0; k < 20; k++) {
            ts.push_back(0.5 * k);
        }
        auto q = exact_quantum_expectation(m.hamiltonian, h, m.initial, m.measurement, ts);
        auto y = impulse_response(m, h, ts);
        for (size_t k = 0; k < ts.size(); k++) {
            EXPECT_NEAR(q[k], y[k], 1e-8) << scheme;
        }
    }
}

TEST(record, noiseless_equals_impulse) {
    auto m = build_scheme("g1", 2);
    Binding h{1, 0.6, -0.9};
    auto r = simulate_record(m, h, 0.1, 50, 0, 3);
    auto y = impulse_response(m, h, r.times);
    EXPECT_EQ(r.values, y);
    EXPECT_EQ(r.scheme, "g1");
    EXPECT_DOUBLE_EQ(r.times[49], 4.9);
}

TEST(record, noise_is_seeded) {
    auto m = build_scheme("g1", 2);
    Binding h{1, 0.6, -0.9};
    auto a = simulate_record(m, h, 0.1, 100, 1e-3, 42);
    auto b = simulate_record(m, h, 0.1, 100, 1e-3, 42);
    auto c = simulate_record(m, h, 0.1, 100, 1e-3, 43);
    EXPECT_EQ(a.values, b.values);
    EXPECT_NE(a.values, c.values);
}

TEST(record, noise_level) {
    auto m = build_scheme("g1", 2);
    Binding h{1, 0.6, -0.9};
    auto clean = simulate_record(m, h, 0.01, 10000, 0, 5);
    auto noisy = simulate_record(m, h, 0.01, 10000, 1e-3, 5);
    double ss = 0;
    for (size_t k = 0; k < clean.values.size(); k++) {
        double d = noisy.values[k] - clean.values[k];
        ss += d * d;
    }
    double sd = std::sqrt(ss / clean.values.size());
    EXPECT_GT(sd, 0.8e-3);
    EXPECT_LT(sd, 1.2e-3);
}

TEST(record, sampling_interval_bound) {
    auto m = build_scheme("g1", 2);
    try {
        simulate_record(m, {1, 1, 1}, 1.0, 10, 0, 1);
        FAIL() << "expected a refusal";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
        EXPECT_NE(std::string(e.what()).find("dt"), std::string::npos);
    }
}

TEST(record, csv_round_trip) {
    auto m = build_scheme("g2", 2);
    auto r = simulate_record(m, {0.9, -0.7, 1.1}, 0.1, 30, 2e-3, 9);
    auto back = record_from_csv(record_to_csv(r));
    EXPECT_EQ(back.values, r.values);
    EXPECT_EQ(back.times, r.times);
    EXPECT_EQ(back.noise_sigma, r.noise_sigma);
    EXPECT_EQ(back.seed, r.seed);
    EXPECT_EQ(back.scheme, "g2");
    EXPECT_DOUBLE_EQ(back.dt, 0.1);
}

TEST(record, corrupted_row_is_named) {
    auto m = build_scheme("g1", 2);
    auto text = record_to_csv(simulate_record(m, {1, 0.5, 0.5}, 0.1, 10, 0, 1));
    size_t line4 = 0;
    for (int i = 0; i < 3; i++) {
        line4 = text.find('\n', line4) + 1;
    }
    text.replace(line4, 1, "x");
    try {
        record_from_csv(text);
        FAIL() << "expected a parse error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find("row 4"), std::string::npos) << e.what();
    }
    EXPECT_THROW(record_from_csv("a,b\n1,2\n"), Error);
}

TEST(era, orders) {
    Rng rng(31);
    struct Case {
        const char *scheme;
        int n;
        int order;
    };
    for (auto c : {Case{"g2", 2, 12}, Case{"g1", 2, 4}, Case{"g1", 3, 4}}) {
        auto m = build_scheme(c.scheme, c.n);
        Binding h;
        for (int i = 0; i < m.n_params(); i++) {
            h.push_back(rng.uniform(0.5, 1.2));
        }
        auto r = simulate_record(m, h, 0.1, 400, 0, 1);
        auto e = era(r);
        EXPECT_EQ(e.order, c.order) << c.scheme << " N=" << c.n;
        EXPECT_EQ(e.hankel_rows, 200);
        EXPECT_EQ(e.hankel_cols, 199);
        auto mk = era_markov(e, 40);
        for (int k = 0; k < 40; k++) {
            EXPECT_NEAR(mk[k], r.values[k], 1e-8);
        }
    }
}

TEST(recovery, chain_noiseless) {
    Rng rng(41);
    auto m = build_scheme("g1", 4);
    Binding h;
    for (int i = 0; i < m.n_params(); i++) {
        h.push_back(rng.uniform(0.5, 1.5) * (rng.coin() ? 1 : -1));
    }
    auto rec = recover_parameters(simulate_record(m, h, 0.1, 400, 0, 1), "g1", 4);
    EXPECT_EQ(rec.method, "lanczos");
    EXPECT_LT(max_err(rec.magnitudes, h), 1e-6);
    EXPECT_EQ(rec.names, m.params());
}

TEST(recovery, sign_blind) {
    auto m = build_scheme("g1", 3);
    Binding h{1.0, 0.8, -0.6, 1.1};
    Binding f{1.0, -0.8, 0.6, -1.1};
    auto a = simulate_record(m, h, 0.1, 300, 0, 1);
    auto b = simulate_record(m, f, 0.1, 300, 0, 1);
    for (size_t k = 0; k < a.values.size(); k++) {
        EXPECT_NEAR(a.values[k], b.values[k], 1e-12);
    }
    auto rec = recover_parameters(b, "g1", 3);
    EXPECT_LT(max_err(rec.magnitudes, h), 1e-6);
}

TEST(recovery, yz_noiseless) {
    auto m = build_scheme("g2", 2);
    Binding h{0.9, -0.7, 1.1};
    auto rec = recover_parameters(simulate_record(m, h, 0.1, 1000, 0, 1), "g2", 2);
    EXPECT_EQ(rec.method, "markov-groebner");
    EXPECT_EQ(rec.era.order, 12);
    EXPECT_LT(max_err(rec.magnitudes, h), 1e-6);
}

TEST(recovery, degenerate_binding_still_solves) {
    // (1, 0.8, 0.6) has a shorter minimal realization; the odd Markov parameters still fix it.
    auto m = build_scheme("g2", 2);
    Binding h{1.0, 0.8, 0.6};
    auto rec = recover_parameters(simulate_record(m, h, 0.1, 1000, 0, 1), "g2", 2);
    EXPECT_LT(rec.era.order, 12);
    EXPECT_LT(max_err(rec.magnitudes, h), 1e-6);
}

TEST(recovery, refusals) {
    auto t1 = build_scheme("t1", 2);
    auto r = simulate_record(t1, {0.5, 0.5}, 0.1, 50, 0, 1);
    try {
        recover_parameters(r, "t1", 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Unidentifiable);
    }
    try {
        recover_parameters(r, "g3", 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Unidentifiable);
    }
    auto g1 = simulate_record(build_scheme("g1", 2), {1, 0.5, 0.5}, 0.1, 50, 0, 1);
    EXPECT_THROW(recover_parameters(g1, "g2", 2), Error);
}

TEST(lanczos, jacobi_matrix) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
    std::vector<double> off{0.9, 1.3, 0.4};
    for (int i = 0; i < 3; i++) {
        j(i, i + 1) = j(i + 1, i) = off[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    std::vector<double> nodes, weights;
    for (int i = 0; i < 4; i++) {
        nodes.push_back(es.eigenvalues()(i));
        weights.push_back(es.eigenvectors()(0, i) * es.eigenvectors()(0, i));
    }
    auto got = lanczos_offdiagonal(nodes, weights, 3);
    for (int i = 0; i < 3; i++) {
        EXPECT_NEAR(got[i], off[i], 1e-12);
    }
    EXPECT_THROW(lanczos_offdiagonal(nodes, weights, 4), Error);
}
