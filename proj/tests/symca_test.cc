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

#include "qsensor/symca.hpp"

#include <gtest/gtest.h>

#include "qsensor/realization.hpp"
#include "qsensor/rng.hpp"

using namespace qsensor;

TEST(symca, leading_markov_parameters) {
    auto m = build_scheme("g2", 2);
    auto ring = parameter_symbols(m);
    auto mk = symbolic_markov(m, 4);
    EXPECT_TRUE(mk[0].is_zero());
    EXPECT_EQ(mk[1], parse_poly("-ha", ring));
    EXPECT_TRUE(mk[2].is_zero());
}

TEST(symca, markov_matches_numeric) {
    Rng rng(11);
    for (const char *scheme : {"g1", "g2"}) {
        auto m = build_scheme(scheme, 2);
        auto h = rng.binding(m.n_params());
        auto sym = symbolic_markov(m, 9);
        auto num = markov_parameters(m, h, 9);
        for (int k = 0; k < 9; k++) {
            EXPECT_NEAR(evaluate(sym[k], h), num[k], 1e-12 * (1 + std::abs(num[k]))) << scheme << " k=" << k;
        }
    }
    EXPECT_THROW(symbolic_markov(build_scheme("g2", 2), 12, 50), Error);
}

TEST(symca, theta_substitution) {
    auto m = build_scheme("g2", 2);
    auto theta = theta_ring(m);
    auto ring = parameter_symbols(m);
    auto p = parse_poly("11*(ha^2 + hb^2 + h1^2)", ring);
    EXPECT_EQ(substitute_theta(p, theta), parse_poly("11*(t1^2 + t2 + t3)", theta));
    EXPECT_THROW(substitute_theta(parse_poly("ha*hb", ring), theta), Error);
    EXPECT_EQ(squared_flags(theta), (std::vector<bool>{false, true, true}));
}

TEST(symca, scalar_integrator) {
    StateSpaceModel m;
    m.dim = 1;
    m.b = {Rational(1)};
    m.c = {Rational(1)};
    m.hamiltonian.param_ids = {"ha"};
    auto t = symbolic_transfer(m);
    ASSERT_EQ(t.denominator.size(), 2u);
    ASSERT_EQ(t.numerator.size(), 1u);
    auto s = std::complex<double>(0.3, 1.1);
    EXPECT_LT(std::abs(evaluate_transfer(t, {0.7}, s) - 1.0 / s), 1e-14);
}

TEST(symca, transfer_matches_numeric) {
    Rng rng(13);
    auto m = build_scheme("g1", 2);
    auto h = rng.binding(m.n_params());
    auto sym = symbolic_transfer(m);
    auto nm = evaluate(m, h);
    auto num = numeric_transfer(nm);
    for (int i = 0; i < 10; i++) {
        std::complex<double> s(rng.uniform(-2, 2), rng.uniform(-2, 2));
        Eigen::MatrixXcd sa = s * Eigen::MatrixXcd::Identity(4, 4) - nm.a.cast<std::complex<double>>();
        std::complex<double> direct =
            (nm.c.cast<std::complex<double>>() * sa.inverse() * nm.b.cast<std::complex<double>>())(0, 0);
        EXPECT_LT(std::abs(evaluate_transfer(sym, h, s) - direct), 1e-10);
        EXPECT_LT(std::abs(evaluate_transfer(num, s) - direct), 1e-10);
    }
    ASSERT_EQ(sym.denominator.size(), num.denominator.size());
    for (size_t i = 0; i < num.denominator.size(); i++) {
        EXPECT_NEAR(evaluate(sym.denominator[i], h), num.denominator[i], 1e-10);
    }
    EXPECT_THROW(symbolic_transfer(build_scheme("g2", 3)), Error);
}

TEST(symca, parametric_basis_closed_forms) {
    auto full = make_ring({"t1", "t2", "t3", "v1", "v2", "v3"}, MonomialOrder::Lex);
    auto unknowns = make_ring({"t1", "t2", "t3"}, MonomialOrder::Lex);
    auto coeffs = make_ring({"v1", "v2", "v3"});
    set_parameter_ring(coeffs);
    std::vector<Poly<RatFunc>> eqs;
    for (const char *s : {"t1 - v1", "10*t1^3 + 7*t1*t2 + 11*t1*t3 - v2", "11*(t1^2 + t2 + t3) - v3"}) {
        eqs.push_back(split_coefficients(parse_poly(s, full), unknowns, coeffs));
    }
    auto g = buchberger(eqs, unknowns);
    ASSERT_EQ(g.generators.size(), 3u);
    // t2 + t3 and 7 t2 + 11 t3 are fixed by the last two equations once t1 = v1.
    std::vector<RatFunc> want = {
        RatFunc(parse_poly("v1", coeffs)),
        RatFunc(parse_poly("-v1^3 + v1*v3 - v2", coeffs), parse_poly("4*v1", coeffs)),
        RatFunc(parse_poly("-33*v1^3 - 7*v1*v3 + 11*v2", coeffs), parse_poly("44*v1", coeffs)),
    };
    for (int i = 0; i < 3; i++) {
        auto expect = Poly<RatFunc>::variable(unknowns, i) - Poly<RatFunc>::constant(unknowns, want[i]);
        bool found = false;
        for (const auto &p : g.generators) {
            found = found || p == expect;
        }
        EXPECT_TRUE(found) << "t" << i + 1;
    }
}

TEST(symca, markov_system_has_unique_magnitudes) {
    auto m = build_scheme("g2", 2);
    auto theta = theta_ring(m);
    auto sym = symbolic_markov(m, 6);
    std::vector<Rational> truth{Rational(1), Rational(4, 5), Rational(3, 5)};
    std::vector<QPoly> eqs;
    for (int k : {1, 3, 5}) {
        eqs.push_back(substitute_theta(sym[k], theta) - QPoly::constant(theta, evaluate(sym[k], truth)));
    }
    auto r = solve_identifiability(eqs, squared_flags(theta));
    ASSERT_EQ(r.verdict, SolveVerdict::Unique);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.exact_solution, (std::vector<Rational>{Rational(1), Rational(16, 25), Rational(9, 25)}));
}

TEST(symca, solver_verdicts) {
    auto r3 = make_ring({"t1", "t2", "t3"}, MonomialOrder::Lex);
    std::vector<QPoly> empty = {parse_poly("t1", r3), parse_poly("10*t1^3 + 7*t1*t2 + 11*t1*t3 - 1", r3)};
    EXPECT_EQ(solve_identifiability(empty, {false, true, true}).verdict, SolveVerdict::Empty);

    auto r2 = make_ring({"t1", "t2"}, MonomialOrder::Lex);
    EXPECT_EQ(solve_identifiability({parse_poly("t1 - t2", r2)}, {false, false}).verdict, SolveVerdict::Infinite);

    auto r1 = make_ring({"t1"}, MonomialOrder::Lex);
    auto f = solve_identifiability({parse_poly("t1^2 - 4", r1)}, {false});
    EXPECT_EQ(f.verdict, SolveVerdict::Finite);
    EXPECT_EQ(f.solutions.size(), 2u);
    auto u = solve_identifiability({parse_poly("t1^2 - 4", r1)}, {true});
    ASSERT_EQ(u.verdict, SolveVerdict::Unique);
    EXPECT_NEAR(u.solutions[0][0], 2.0, 1e-12);
}
