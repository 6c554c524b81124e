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

#include "qsensor/pauli.hpp"

#include <algorithm>
#include <bit>
#include <complex>
#include <map>
#include <sstream>

namespace qsensor {

namespace {

uint64_t low_bits(int n) {
    return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

void check_same_size(const PauliString &p, const PauliString &q) {
    if (p.n_qubits != q.n_qubits) {
        throw Error(ErrorCode::DimensionMismatch,
                    "pauli strings on " + std::to_string(p.n_qubits) + " and " + std::to_string(q.n_qubits) + " qubits");
    }
}

}  // namespace

PauliString::PauliString(int n, uint64_t x, uint64_t z, int phase)
    : n_qubits(n), x_mask(x), z_mask(z), phase_exp(static_cast<uint8_t>(((phase % 4) + 4) % 4)) {
    if (n < 1 || n > kMaxQubits) {
        throw Error(ErrorCode::InvalidArgument, "qubit count " + std::to_string(n) + " outside [1, 62]");
    }
    if ((x | z) & ~low_bits(n)) {
        throw Error(ErrorCode::InvalidArgument, "mask bits beyond qubit count");
    }
}

PauliString PauliString::identity(int n) {
    return PauliString(n, 0, 0, 0);
}

PauliString PauliString::single(int n, int qubit, char letter) {
    if (qubit < 0 || qubit >= n) {
        throw Error(ErrorCode::InvalidArgument, "qubit index out of range");
    }
    uint64_t b = uint64_t{1} << qubit;
    switch (letter) {
        case 'I':
            return identity(n);
        case 'X':
            return PauliString(n, b, 0);
        case 'Y':
            return PauliString(n, b, b);
        case 'Z':
            return PauliString(n, 0, b);
    }
    throw Error(ErrorCode::InvalidArgument, std::string("unknown pauli letter ") + letter);
}

int PauliString::sign() const {
    if (!is_hermitian()) {
        throw Error(ErrorCode::NotHermitian, "sign of a non-hermitian string");
    }
    return phase_exp == 0 ? 1 : -1;
}

char PauliString::letter(int qubit) const {
    bool x = (x_mask >> qubit) & 1;
    bool z = (z_mask >> qubit) & 1;
    return "IZXY"[x * 2 + z];
}

int PauliString::weight() const {
    return std::popcount(x_mask | z_mask);
}

int PauliString::top_qubit() const {
    uint64_t m = x_mask | z_mask;
    return m == 0 ? -1 : 63 - std::countl_zero(m);
}

PauliString multiply(const PauliString &p, const PauliString &q) {
    check_same_size(p, q);
    uint64_t x1 = p.x_mask, z1 = p.z_mask, x2 = q.x_mask, z2 = q.z_mask;
    uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
    uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
    // XY=iZ, YZ=iX, ZX=iY and the reverses pick up -i.
    int plus = std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2));
    int minus = std::popcount((Y1 & X2) | (Z1 & Y2) | (X1 & Z2));
    return PauliString(p.n_qubits, x1 ^ x2, z1 ^ z2, p.phase_exp + q.phase_exp + plus - minus);
}

bool anticommutes(const PauliString &p, const PauliString &q) {
    check_same_size(p, q);
    return std::popcount((p.x_mask & q.z_mask) ^ (p.z_mask & q.x_mask)) & 1;
}

std::optional<PauliString> commutator(const PauliString &p, const PauliString &q) {
    if (!anticommutes(p, q)) {
        return std::nullopt;
    }
    return multiply(p, q);
}

int QubitLayout::alpha() const {
    if (sensor_qubits != 2) {
        throw Error(ErrorCode::InvalidArgument, "one-qubit sensor has no alpha qubit");
    }
    return 0;
}

std::string QubitLayout::label(int qubit) const {
    if (sensor_qubits == 2 && qubit == 0) {
        return "a";
    }
    if (qubit == beta()) {
        return "b";
    }
    return std::to_string(qubit - beta());
}

int QubitLayout::qubit_of(const std::string &label) const {
    if (label == "a" && sensor_qubits == 2) {
        return 0;
    }
    if (label == "b") {
        return beta();
    }
    if (!label.empty() && std::all_of(label.begin(), label.end(), ::isdigit)) {
        int k = std::stoi(label);
        if (k >= 1 && k <= n_chain) {
            return chain(k);
        }
    }
    throw Error(ErrorCode::Parse, "unknown qubit label '" + label + "'");
}

std::string render(const PauliString &p, const QubitLayout &layout) {
    std::string out;
    switch (p.phase_exp) {
        case 1:
            out = "i";
            break;
        case 2:
            out = "-";
            break;
        case 3:
            out = "-i";
            break;
    }
    bool first = true;
    for (int q = 0; q < p.n_qubits; q++) {
        char c = p.letter(q);
        if (c == 'I') {
            continue;
        }
        if (!first) {
            out += ' ';
        }
        first = false;
        out += c;
        out += layout.label(q);
    }
    if (first) {
        out += 'I';
    }
    return out;
}

PauliString parse_pauli(const std::string &text, const QubitLayout &layout) {
    int n = layout.n_qubits();
    std::string s = text;
    int phase = 0;
    size_t pos = s.find_first_not_of(" \t");
    if (pos == std::string::npos) {
        throw Error(ErrorCode::Parse, "empty pauli string");
    }
    s = s.substr(pos);
    if (s[0] == '+' || s[0] == '-') {
        phase = s[0] == '-' ? 2 : 0;
        s = s.substr(1);
    }
    if (!s.empty() && s[0] == 'i' && (s.size() == 1 || s[1] != ' ')) {
        phase += 1;
        s = s.substr(1);
    }
    PauliString out = PauliString::identity(n);
    std::istringstream in(s);
    std::string tok;
    bool any = false;
    while (in >> tok) {
        any = true;
        if (tok == "I") {
            continue;
        }
        char c = tok[0];
        if (c != 'X' && c != 'Y' && c != 'Z' && c != 'I') {
            throw Error(ErrorCode::Parse, "bad token '" + tok + "' in '" + text + "'");
        }
        int q = layout.qubit_of(tok.substr(1));
        if (((out.x_mask | out.z_mask) >> q) & 1) {
            throw Error(ErrorCode::Parse, "qubit repeated in '" + text + "'");
        }
        out = multiply(out, PauliString::single(n, q, c));
    }
    if (!any) {
        throw Error(ErrorCode::Parse, "empty pauli string");
    }
    out.phase_exp = static_cast<uint8_t>((out.phase_exp + phase) % 4);
    return out;
}

HamiltonianSpec HamiltonianSpec::exchange(int n_chain, int sensor_qubits) {
    if (sensor_qubits != 1 && sensor_qubits != 2) {
        throw Error(ErrorCode::InvalidArgument, "sensor must have 1 or 2 qubits");
    }
    if (n_chain < 1) {
        throw Error(ErrorCode::InvalidArgument, "chain needs at least one spin");
    }
    HamiltonianSpec h;
    h.layout = QubitLayout{sensor_qubits, n_chain};
    int n = h.layout.n_qubits();
    if (n > kMaxQubits) {
        throw Error(ErrorCode::SizeCap, "too many qubits");
    }
    std::vector<std::pair<int, int>> bonds;
    if (sensor_qubits == 2) {
        h.param_ids.push_back("ha");
        h.known.push_back(true);
        bonds.emplace_back(0, 1);
    }
    h.param_ids.push_back("hb");
    h.known.push_back(false);
    bonds.emplace_back(h.layout.beta(), h.layout.chain(1));
    for (int k = 1; k < n_chain; k++) {
        h.param_ids.push_back("h" + std::to_string(k));
        h.known.push_back(false);
        bonds.emplace_back(h.layout.chain(k), h.layout.chain(k + 1));
    }
    for (size_t i = 0; i < bonds.size(); i++) {
        auto [a, b] = bonds[i];
        for (char c : {'X', 'Y'}) {
            PauliString t = multiply(PauliString::single(n, a, c), PauliString::single(n, b, c));
            h.terms.push_back({static_cast<int>(i), Rational(1, 2), t});
        }
    }
    return h;
}

int HamiltonianSpec::param_index(const std::string &id) const {
    for (size_t i = 0; i < param_ids.size(); i++) {
        if (param_ids[i] == id) {
            return static_cast<int>(i);
        }
    }
    throw Error(ErrorCode::Unbound, "no parameter named '" + id + "'");
}

std::vector<DerivativeTerm> heisenberg_derivative(const HamiltonianSpec &h, const PauliString &o) {
    if (o.n_qubits != h.n_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "observable and hamiltonian sizes differ");
    }
    if (!o.is_hermitian()) {
        throw Error(ErrorCode::NotHermitian, "heisenberg derivative of a non-hermitian string");
    }
    // i * c * [P, o] = 2 c * (i P o) for anticommuting P and o.
    std::map<std::tuple<int, uint64_t, uint64_t>, Rational> merged;
    for (const auto &t : h.terms) {
        auto c = commutator(t.string, o);
        if (!c) {
            continue;
        }
        PauliString r = *c;
        r.phase_exp = static_cast<uint8_t>((r.phase_exp + 1) % 4);
        merged[{t.param, r.x_mask, r.z_mask}] += 2 * t.prefactor * r.sign();
    }
    std::vector<DerivativeTerm> out;
    for (auto &[key, coeff] : merged) {
        if (coeff == 0) {
            continue;
        }
        auto [param, x, z] = key;
        out.push_back({param, coeff, PauliString(o.n_qubits, x, z, 0)});
    }
    return out;
}

InitialState InitialState::from_label(const std::string &label, const QubitLayout &layout) {
    InitialState s;
    if (label == "xa") {
        s.prepared_x = uint64_t{1} << layout.alpha();
    } else if (label == "xb") {
        s.prepared_x = uint64_t{1} << layout.beta();
    } else if (label == "xab") {
        s.prepared_x = (uint64_t{1} << layout.alpha()) | (uint64_t{1} << layout.beta());
    } else {
        throw Error(ErrorCode::Inadmissible, "unknown initial state '" + label + "'");
    }
    return s;
}

std::string InitialState::label(const QubitLayout &layout) const {
    std::string out = "x";
    for (int q = 0; q < layout.sensor_qubits; q++) {
        if ((prepared_x >> q) & 1) {
            out += layout.label(q);
        }
    }
    return out == "x" ? "mixed" : out;
}

int expectation(const PauliString &p, const InitialState &s) {
    if (!p.is_hermitian()) {
        throw Error(ErrorCode::NotHermitian, "expectation of a non-hermitian string");
    }
    if (p.z_mask != 0 || (p.x_mask & ~s.prepared_x) != 0) {
        return 0;
    }
    return p.sign();
}

Eigen::MatrixXcd dense_matrix(const PauliString &p) {
    if (p.n_qubits > kMaxDenseQubits) {
        throw Error(ErrorCode::SizeCap, "dense matrices are limited to 14 qubits");
    }
    const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    size_t d = size_t{1} << p.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    int base = p.phase_exp + std::popcount(p.x_mask & p.z_mask);
    for (size_t b = 0; b < d; b++) {
        int k = base + 2 * (std::popcount(b & p.z_mask) & 1);
        m(b ^ p.x_mask, b) = ipow[k % 4];
    }
    return m;
}

Eigen::MatrixXd dense_hamiltonian(const HamiltonianSpec &h, const std::vector<double> &values) {
    if (h.n_qubits() > kMaxDenseQubits) {
        throw Error(ErrorCode::SizeCap, "dense matrices are limited to 14 qubits");
    }
    if (static_cast<int>(values.size()) != h.n_params()) {
        throw Error(ErrorCode::Unbound, "hamiltonian needs " + std::to_string(h.n_params()) + " values");
    }
    size_t d = size_t{1} << h.n_qubits();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (const auto &t : h.terms) {
        double c = t.prefactor.get_d() * values[t.param];
        const auto &p = t.string;
        int base = p.phase_exp + std::popcount(p.x_mask & p.z_mask);
        for (size_t b = 0; b < d; b++) {
            int k = (base + 2 * (std::popcount(b & p.z_mask) & 1)) % 4;
            // XX and YY terms are real: k is always even here.
            m(b ^ p.x_mask, b) += k == 0 ? c : -c;
        }
    }
    return m;
}

Eigen::MatrixXd dense_density(const InitialState &s, int n_qubits) {
    if (n_qubits > kMaxDenseQubits) {
        throw Error(ErrorCode::SizeCap, "dense matrices are limited to 14 qubits");
    }
    size_t d = size_t{1} << n_qubits;
    Eigen::MatrixXd rho(d, d);
    // Product of (I+X)/2 on prepared qubits and I/2 elsewhere: <r|rho|c> is 2^-n whenever
    // r and c agree on every unprepared qubit.
    double v = 1.0 / static_cast<double>(d);
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            rho(r, c) = ((r ^ c) & ~s.prepared_x) == 0 ? v : 0.0;
        }
    }
    return rho;
}

}  // namespace qsensor
