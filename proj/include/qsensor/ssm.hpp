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

#include <Eigen/Dense>

#include "qsensor/accessible.hpp"
#include "qsensor/exact.hpp"

namespace qsensor {

/// Numeric parameter values, ordered like StateSpaceModel::params.
using Binding = std::vector<double>;
using ExactBinding = std::vector<Rational>;

struct AEntry {
    int row;
    int col;
    int param;
    Rational coeff;
};

struct StateSpaceModel {
    int dim = 0;
    std::vector<AEntry> a_entries;
    std::vector<Rational> b;
    std::vector<Rational> c;
    AccessibleSet basis;
    HamiltonianSpec hamiltonian;
    InitialState initial;
    PauliString measurement;

    const std::vector<std::string> &params() const {
        return hamiltonian.param_ids;
    }
    int n_params() const {
        return hamiltonian.n_params();
    }
};

struct NumericModel {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::RowVectorXd c;

    int dim() const {
        return static_cast<int>(a.rows());
    }
};

struct ExactModel {
    QMatrix a;
    QMatrix b;
    QMatrix c;
};

StateSpaceModel build(const HamiltonianSpec &h, const AccessibleSet &g, const InitialState &s, const PauliString &m);
/// Catalog scheme with its first admissible initial state unless one is named.
StateSpaceModel build_scheme(const std::string &scheme, int n_chain, const std::string &initial = "");

NumericModel evaluate(const StateSpaceModel &model, const Binding &binding);
ExactModel evaluate_exact(const StateSpaceModel &model, const ExactBinding &binding);

/// y(t) = C exp(A t) B.
std::vector<double> impulse_response(const NumericModel &m, const std::vector<double> &times);
std::vector<double> impulse_response(const StateSpaceModel &model, const Binding &binding,
                                     const std::vector<double> &times);
/// [CB, CAB, ..., CA^{k-1}B].
std::vector<double> markov_parameters(const NumericModel &m, int k);
std::vector<double> markov_parameters(const StateSpaceModel &model, const Binding &binding, int k);

/// Gershgorin bound on the spectral radius of A(binding).
double gershgorin_bound(const StateSpaceModel &model, const Binding &binding);

/// Text dump: dim, A triples, B, C and the basis rendering.
std::string dump(const StateSpaceModel &model);

/// Looks up named values ("ha", "hb", "h1", ...) in model order.
Binding binding_from_names(const StateSpaceModel &model, const std::vector<std::pair<std::string, double>> &values);

}  // namespace qsensor
