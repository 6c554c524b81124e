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

#include <complex>
#include <string>
#include <vector>

#include "qsensor/groebner.hpp"
#include "qsensor/ssm.hpp"

namespace qsensor {

/// Ring whose variables are the model's parameter ids.
RingPtr parameter_symbols(const StateSpaceModel &model);

/// Exact [CB, CAB, ..., CA^{k-1}B] in the parameter symbols. Throws Budget when the total
/// term count of the working vector exceeds term_budget.
std::vector<QPoly> symbolic_markov(const StateSpaceModel &model, int k, size_t term_budget = 2000000);

/// G(s) = num(s)/den(s); index i holds the coefficient of s^i.
struct RationalTransfer {
    std::vector<QPoly> numerator;
    std::vector<QPoly> denominator;
};

constexpr int kSymbolicTransferCap = 24;

/// Faddeev-LeVerrier on the symbolic A. No common factors are cancelled.
RationalTransfer symbolic_transfer(const StateSpaceModel &model, int cap = kSymbolicTransferCap);

struct NumericTransfer {
    std::vector<double> numerator;
    std::vector<double> denominator;
};

/// Characteristic polynomial from the spectrum, numerator from the Markov parameters.
NumericTransfer numeric_transfer(const NumericModel &m);
std::complex<double> evaluate_transfer(const NumericTransfer &t, std::complex<double> s);
std::complex<double> evaluate_transfer(const RationalTransfer &t, const std::vector<double> &binding,
                                       std::complex<double> s);

/// Ring t1, t2, ... for the identifiability unknowns: t1 = ha, t2 = hb^2, t3 = h1^2, ...
/// (two-qubit sensor). Parameters other than the first enter squared.
RingPtr theta_ring(const StateSpaceModel &model, MonomialOrder order = MonomialOrder::Lex);

/// Rewrites a polynomial in the parameter symbols into the theta ring. Throws
/// InvalidArgument when a squared parameter appears with an odd power.
QPoly substitute_theta(const QPoly &p, const RingPtr &theta);

enum class SolveVerdict { Unique, Finite, Infinite, Empty };
const char *solve_verdict_name(SolveVerdict v);

struct SolveResult {
    SolveVerdict verdict = SolveVerdict::Empty;
    /// Admissible real solutions.
    std::vector<std::vector<double>> solutions;
    /// Filled when the basis is triangular and linear in every variable.
    std::vector<Rational> exact_solution;
    bool exact = false;
    GroebnerBasis<Rational> basis;
    std::string note;
};

/// Lex Groebner basis plus back substitution. Variables flagged in `nonnegative` must come
/// out >= 0 (they stand for squares).
SolveResult solve_identifiability(const std::vector<QPoly> &equations, const std::vector<bool> &nonnegative);

/// Moves the trailing variables of p's ring into the coefficient field: the result lives over
/// `main` (the leading variables) with coefficients in Q(coeffs).
Poly<RatFunc> split_coefficients(const QPoly &p, const RingPtr &main, const RingPtr &coeffs);

/// Default flags for a theta ring: every variable but the first is a square.
std::vector<bool> squared_flags(const RingPtr &theta);

}  // namespace qsensor
