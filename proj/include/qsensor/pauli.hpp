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
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <Eigen/Dense>

#include "qsensor/error.hpp"

namespace qsensor {

using Rational = mpq_class;

constexpr int kMaxQubits = 62;
constexpr int kMaxDenseQubits = 14;

/// Tensor product of I/X/Y/Z times i^phase. Bit q of x_mask/z_mask describes qubit q
/// with (1,0)=X, (1,1)=Y, (0,1)=Z.
struct PauliString {
    int n_qubits = 1;
    uint64_t x_mask = 0;
    uint64_t z_mask = 0;
    uint8_t phase_exp = 0;

    PauliString() = default;
    PauliString(int n, uint64_t x, uint64_t z, int phase = 0);

    static PauliString identity(int n);
    /// Single letter on one qubit, identity elsewhere.
    static PauliString single(int n, int qubit, char letter);

    bool is_identity() const {
        return x_mask == 0 && z_mask == 0 && phase_exp == 0;
    }
    bool is_hermitian() const {
        return (phase_exp & 1) == 0;
    }
    /// +1 or -1; only valid for hermitian strings.
    int sign() const;
    /// Same letters with phase 0.
    PauliString unsigned_part() const {
        return PauliString(n_qubits, x_mask, z_mask, 0);
    }
    PauliString negated() const {
        return PauliString(n_qubits, x_mask, z_mask, phase_exp + 2);
    }
    char letter(int qubit) const;
    int weight() const;
    /// Highest qubit carrying a non-identity letter, or -1.
    int top_qubit() const;

    bool operator==(const PauliString &other) const = default;
    bool same_letters(const PauliString &other) const {
        return n_qubits == other.n_qubits && x_mask == other.x_mask && z_mask == other.z_mask;
    }
};

struct PauliKeyHash {
    size_t operator()(const PauliString &p) const {
        uint64_t h = p.x_mask * 0x9E3779B97F4A7C15ULL;
        h ^= p.z_mask + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        return static_cast<size_t>(h ^ p.phase_exp);
    }
};

PauliString multiply(const PauliString &p, const PauliString &q);
bool anticommutes(const PauliString &p, const PauliString &q);
/// Returns [p,q]/2 = pq when p and q anticommute, nothing when they commute.
std::optional<PauliString> commutator(const PauliString &p, const PauliString &q);

/// Sensor layout. Two-qubit sensors put alpha on qubit 0 and beta on qubit 1, with chain
/// spin k on qubit k+1. One-qubit sensors put beta on qubit 0 and chain spin k on qubit k.
struct QubitLayout {
    int sensor_qubits = 2;
    int n_chain = 1;

    int n_qubits() const {
        return sensor_qubits + n_chain;
    }
    int alpha() const;
    int beta() const {
        return sensor_qubits - 1;
    }
    int chain(int k) const {
        return sensor_qubits - 1 + k;
    }
    /// "a", "b" or the chain index.
    std::string label(int qubit) const;
    int qubit_of(const std::string &label) const;
    uint64_t sensor_mask() const {
        return (uint64_t{1} << sensor_qubits) - 1;
    }
};

/// Renders e.g. "Za Yb X1"; a leading "-" marks sign -1 and "I" is the identity.
std::string render(const PauliString &p, const QubitLayout &layout);
PauliString parse_pauli(const std::string &text, const QubitLayout &layout);

struct HamiltonianTerm {
    int param = 0;
    Rational prefactor;
    PauliString string;
};

/// Nearest-neighbour exchange chain without transverse field, coupled to the sensor.
struct HamiltonianSpec {
    QubitLayout layout;
    std::vector<std::string> param_ids;
    std::vector<bool> known;
    std::vector<HamiltonianTerm> terms;

    static HamiltonianSpec exchange(int n_chain, int sensor_qubits);

    int n_qubits() const {
        return layout.n_qubits();
    }
    int n_params() const {
        return static_cast<int>(param_ids.size());
    }
    int param_index(const std::string &id) const;
};

struct DerivativeTerm {
    int param = 0;
    Rational coeff;
    PauliString string;
};

/// i[H, o] as a merged real combination of unsigned hermitian strings.
std::vector<DerivativeTerm> heisenberg_derivative(const HamiltonianSpec &h, const PauliString &o);

/// Qubits prepared in (I+X)/2; everything else is maximally mixed.
struct InitialState {
    uint64_t prepared_x = 0;

    static InitialState from_label(const std::string &label, const QubitLayout &layout);
    std::string label(const QubitLayout &layout) const;
};

/// Tr(p rho) in {-1, 0, +1}.
int expectation(const PauliString &p, const InitialState &s);

Eigen::MatrixXcd dense_matrix(const PauliString &p);
/// Real symmetric dense Hamiltonian at numeric parameter values.
Eigen::MatrixXd dense_hamiltonian(const HamiltonianSpec &h, const std::vector<double> &values);
Eigen::MatrixXd dense_density(const InitialState &s, int n_qubits);

}  // namespace qsensor
