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

#include <cstdint>
#include <string>
#include <vector>

#include "qsensor/ssm.hpp"

namespace qsensor {

/// Tr(e^{iHt} M e^{-iHt} rho) by dense diagonalization of H. At most 14 qubits.
double exact_quantum_expectation(const HamiltonianSpec &h, const Binding &binding, const InitialState &s,
                                 const PauliString &m, double t);
std::vector<double> exact_quantum_expectation(const HamiltonianSpec &h, const Binding &binding,
                                              const InitialState &s, const PauliString &m,
                                              const std::vector<double> &times);

/// Sampled impulse response, one ensemble expectation per sample.
struct MeasurementRecord {
    std::vector<double> times;
    std::vector<double> values;
    double dt = 0;
    double noise_sigma = 0;
    uint64_t seed = 0;
    std::string scheme;
};

constexpr double kBranchMargin = 0.7853981633974483;  // pi/4

/// Samples t_k = k dt for k < count. Throws InvalidArgument when dt times the Gershgorin
/// bound reaches pi/4.
MeasurementRecord simulate_record(const StateSpaceModel &model, const Binding &binding, double dt, int count,
                                  double noise_sigma, uint64_t seed);

/// CSV with header t,y,sigma,seed,scheme; %.17g so values round-trip.
std::string record_to_csv(const MeasurementRecord &r);
/// Throws Parse naming the offending row.
MeasurementRecord record_from_csv(const std::string &text);
void write_record(const MeasurementRecord &r, const std::string &path);
MeasurementRecord read_record(const std::string &path);

struct EraRealization {
    Eigen::MatrixXd a_hat;
    Eigen::VectorXd b_hat;
    Eigen::RowVectorXd c_hat;
    Eigen::MatrixXd a_cont;
    int order = 0;
    std::vector<double> singular_values;
    int hankel_rows = 0;
    int hankel_cols = 0;
    bool order_ambiguous = false;
    /// Order the data alone suggested (equals `order` unless the cap was lower).
    int data_order = 0;
};

/// Hankel rows floor(K/2), columns K - rows - 1, built from y_{i+j} and shifted y_{i+j+1}.
/// order_cap > 0 bounds the selected order from above.
EraRealization era(const MeasurementRecord &r, int order_cap = 0);
/// c_hat a_hat^k b_hat for k < count.
std::vector<double> era_markov(const EraRealization &e, int count);

struct Recovery {
    /// |h| in model parameter order.
    std::vector<double> magnitudes;
    std::vector<std::string> names;
    EraRealization era;
    /// Invariant data fed to the solver (continuous Markov parameters or spectral weights).
    std::vector<double> invariants;
    std::string method;
    std::string note;
};

/// g1: Lanczos on the spectral measure of the Xa autocorrelation.
/// g2 with N = 2: odd Markov parameters matched through a lex Groebner basis.
/// Other schemes are refused with Unidentifiable.
Recovery recover_parameters(const MeasurementRecord &r, const std::string &scheme, int n_chain);

/// Off-diagonals of the Jacobi matrix whose spectral measure is sum w_i delta(x_i).
std::vector<double> lanczos_offdiagonal(const std::vector<double> &nodes, const std::vector<double> &weights,
                                        int steps);

}  // namespace qsensor
