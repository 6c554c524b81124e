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

#include "qsensor/ssm.hpp"

namespace qsensor {

/// SVD rank with the cut sigma > sigma_max * dim * eps * 64.
int numeric_rank(const Eigen::MatrixXd &m);

Eigen::MatrixXd controllability_matrix(const NumericModel &m);
Eigen::MatrixXd observability_matrix(const NumericModel &m);
QMatrix controllability_matrix(const ExactModel &m);
QMatrix observability_matrix(const ExactModel &m);

struct RankReport {
    Eigen::MatrixXd matrix;
    int rank = 0;
    /// True when the rank came from exact rational elimination.
    bool exact = false;
};

/// Rank is recomputed exactly (binding converted to rationals) when dim <= 12.
RankReport controllability_rank(const StateSpaceModel &model, const Binding &binding);
RankReport observability_rank(const StateSpaceModel &model, const Binding &binding);

struct PbhReport {
    int rank = 0;
    int dim = 0;
    bool deficient = false;
};

/// Column rank of [C; A - lambda I].
PbhReport pbh_test(const NumericModel &m, std::complex<double> lambda);
PbhReport pbh_test(const StateSpaceModel &model, const Binding &binding, std::complex<double> lambda);

struct MinimalRealization {
    Eigen::MatrixXd a_min;
    Eigen::VectorXd b_min;
    Eigen::RowVectorXd c_min;
    /// Columns span the retained coordinates: x = transform * x_min.
    Eigen::MatrixXd transform_q;
    int order = 0;
    int controllable_dim = 0;
    int unobservable_dim = 0;
};

struct SptArtifacts {
    QMatrix p_matrix;
    QMatrix p_bar;
    QMatrix p_vec;
    QMatrix p_bar_inv;
    QMatrix q;
    QMatrix q_inv;
    QMatrix ul, ur, dl, dr;
    QMatrix a_tilde;
    QMatrix b_tilde;
    QMatrix c_tilde;
    Rational det_p_bar;
};

/// Structure preserving reduction of the odd-N g1 model, in exact arithmetic.
SptArtifacts spt_minimal(const StateSpaceModel &model, const ExactBinding &binding);
/// Same construction in floating point on an already evaluated triple.
NumericModel spt_reduce(const NumericModel &m);

/// Controllable then observable Krylov projection. Preserves C exp(At) B.
MinimalRealization kalman_minimal(const NumericModel &m, double tol = 1e-9);
MinimalRealization kalman_minimal(const StateSpaceModel &model, const Binding &binding, double tol = 1e-9);

/// Text diagnostics for a bound model.
std::string diagnostics_report(const StateSpaceModel &model, const Binding &binding);

}  // namespace qsensor
