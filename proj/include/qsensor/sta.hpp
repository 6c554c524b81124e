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

#include "qsensor/realization.hpp"
#include "qsensor/rng.hpp"

namespace qsensor {

enum class StaVerdict { Equivalent, Inequivalent, Degenerate };
const char *verdict_name(StaVerdict v);

constexpr double kStaEquivalentTol = 1e-9;
constexpr double kStaInequivalentMargin = 1e-4;
constexpr double kStaDetThreshold = 1e-6;
constexpr int kStaDraws = 64;

struct StaInstance {
    /// Best candidate found (the certified S when equivalent).
    Eigen::MatrixXd s;
    /// ||S A - A' S||_F * sqrt(dim) / ||S||_F.
    double residual = 0;
    /// ||S B - B'|| + ||C' S - C||.
    double constraint_residual = 0;
    /// Dimension of the affine solution set (0 = unique S).
    int solution_dim = 0;
    double det = 0;
    StaVerdict verdict = StaVerdict::Degenerate;
};

/// Searches for nonsingular S with S A = A' S, S B = B', C' S = C.
StaInstance solve_similarity(const NumericModel &at_h, const NumericModel &at_h_prime, Rng &rng);

/// Minimal triple used for the test: g1 even N as built, g1 odd N after the structure
/// preserving reduction, anything else after Krylov reduction.
NumericModel sta_triple(const StateSpaceModel &model, const Binding &binding);

/// Checks minimality at both bindings, then solves. Throws NotMinimal otherwise.
StaInstance solve_similarity(const StateSpaceModel &model, const Binding &h, const Binding &h_prime, Rng &rng);

struct ExactStaResult {
    bool consistent = false;
    int solution_dim = 0;
    QMatrix s;
};

/// Same linear system solved over the rationals.
ExactStaResult solve_similarity_exact(const QMatrix &a, const QMatrix &b, const QMatrix &c, const QMatrix &a_prime,
                                      const QMatrix &b_prime, const QMatrix &c_prime);

/// All 2^k sign patterns over the chosen parameters (others untouched). k is capped at 20.
std::vector<Binding> sign_orbit(const Binding &h, const std::vector<int> &which);
std::vector<Binding> sign_orbit(const Binding &h);

struct ScanReport {
    std::string scheme;
    int n_chain = 0;
    int trials = 0;
    bool vacuous = false;
    bool identifiable_in_magnitude = false;
    int sign_flip_checks = 0;
    int sign_flip_failures = 0;
    int perturbation_checks = 0;
    int perturbation_failures = 0;
    double worst_equivalent_residual = 0;
    double worst_off_diagonal = 0;
    double min_inequivalent_residual = 0;
    double min_perturbation = 0;
    /// First certified S for a sign flip, as a witness.
    Eigen::MatrixXd witness;
    std::string note;
};

ScanReport identifiability_scan(const std::string &scheme, int n_chain, int trials, uint64_t seed,
                                int perturbations = 20);

std::string render_scan(const ScanReport &r);

}  // namespace qsensor
