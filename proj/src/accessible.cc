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

#include "qsensor/accessible.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace qsensor {

namespace {

// Layout of the Y_alpha Z_beta set for two chain spins, in state-vector order. The first nine
// entries are the whole set for a single chain spin.
const char *const kYzOrder[] = {
    "Ya Zb",    "Xb",       "Zb Y1",       "Ya Xb Y1", "Ya Z1",       "Ya Yb X1",    "Xa Yb Y1", "Za Y1",
    "Za Xb Z1", "Zb Z1 X2", "Ya Xb Z1 X2", "Ya Y1 X2", "Ya Z2",       "Ya X1 Y2",    "Ya Yb Z1 Y2", "Xa Yb Z1 X2",
    "Za Z1 X2", "Za Xb Y1 X2", "Za Xb Z2", "Za Xb X1 Y2", "Xa X1 X2", "Za Yb X1 X2", "Za Zb X2",  "Za Zb Y1 Z2",
};

bool lex_less(const PauliString &a, const PauliString &b) {
    if (a.x_mask != b.x_mask) {
        return a.x_mask < b.x_mask;
    }
    return a.z_mask < b.z_mask;
}

PauliString widen(const PauliString &p, int n) {
    return PauliString(n, p.x_mask, p.z_mask, p.phase_exp);
}

void check_closed(const std::vector<PauliString> &strings, const HamiltonianSpec &h) {
    std::unordered_set<PauliString, PauliKeyHash> keys;
    for (const auto &p : strings) {
        keys.insert(p.unsigned_part());
    }
    for (const auto &p : strings) {
        for (const auto &t : heisenberg_derivative(h, p)) {
            if (!keys.count(t.string)) {
                throw Error(ErrorCode::NotClosed,
                            render(t.string, h.layout) + " reached from " + render(p, h.layout) + " is missing");
            }
        }
    }
}

std::vector<size_t> depth_lex_order(const RawSet &raw, const std::vector<size_t> &subset) {
    std::vector<size_t> idx = subset;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        if (raw.depth[a] != raw.depth[b]) {
            return raw.depth[a] < raw.depth[b];
        }
        return lex_less(raw.strings[a], raw.strings[b]);
    });
    return idx;
}

// Order for the Y_alpha Z_beta scheme: fixed table up to two chain spins, then the order for
// one spin fewer followed by the new strings in (depth, bitmask) order.
std::vector<PauliString> yz_order(const RawSet &raw, const HamiltonianSpec &h) {
    int n_chain = h.layout.n_chain;
    int n = h.n_qubits();
    std::vector<PauliString> prefix;
    if (n_chain <= 2) {
        QubitLayout table_layout{2, 2};
        size_t count = n_chain == 1 ? 9 : 24;
        for (size_t i = 0; i < count; i++) {
            PauliString p = parse_pauli(kYzOrder[i], table_layout);
            prefix.push_back(PauliString(n, p.x_mask, p.z_mask, p.phase_exp));
        }
        if (prefix.size() != raw.strings.size()) {
            throw Error(ErrorCode::NotClosed, "Y_alpha Z_beta table does not match the generated set");
        }
    } else {
        HamiltonianSpec smaller = HamiltonianSpec::exchange(n_chain - 1, 2);
        AccessibleSet prev = generate(smaller, parse_pauli("Ya Zb", smaller.layout), "g2");
        for (const auto &p : prev.basis) {
            prefix.push_back(widen(p, n));
        }
    }
    std::unordered_set<PauliString, PauliKeyHash> seen;
    for (const auto &p : prefix) {
        seen.insert(p.unsigned_part());
    }
    std::vector<size_t> rest;
    size_t found = 0;
    for (size_t i = 0; i < raw.strings.size(); i++) {
        if (seen.count(raw.strings[i].unsigned_part())) {
            found++;
        } else {
            rest.push_back(i);
        }
    }
    if (found != prefix.size()) {
        throw Error(ErrorCode::NotClosed, "Y_alpha Z_beta prefix is not contained in the generated set");
    }
    std::vector<PauliString> out = prefix;
    for (size_t i : depth_lex_order(raw, rest)) {
        out.push_back(raw.strings[i]);
    }
    return out;
}

// Chain order for g1: by highest occupied qubit, with signs chosen so that every
// superdiagonal coefficient is positive.
std::vector<PauliString> chain_order(const RawSet &raw, const HamiltonianSpec &h) {
    std::vector<PauliString> out = raw.strings;
    std::sort(out.begin(), out.end(), [](const PauliString &a, const PauliString &b) {
        if (a.top_qubit() != b.top_qubit()) {
            return a.top_qubit() < b.top_qubit();
        }
        return lex_less(a, b);
    });
    for (size_t k = 1; k < out.size(); k++) {
        for (const auto &t : heisenberg_derivative(h, out[k - 1])) {
            if (t.string.same_letters(out[k])) {
                int s = sgn(t.coeff) * out[k].sign();
                if (s < 0) {
                    out[k] = out[k].negated();
                }
            }
        }
    }
    return out;
}

}  // namespace

const std::vector<SchemeInfo> &scheme_catalog() {
    static const std::vector<SchemeInfo> catalog = {
        {"g1", 2, "Za Yb", {"xa"}, "two-qubit sensor measuring Z_alpha Y_beta"},
        {"g2", 2, "Ya Zb", {"xb"}, "two-qubit sensor measuring Y_alpha Z_beta"},
        {"g3", 2, "Ya Yb", {"xa", "xb", "xab"}, "two-qubit sensor measuring Y_alpha Y_beta"},
        {"g4", 2, "Za Zb", {"xa", "xb", "xab"}, "two-qubit sensor measuring Z_alpha Z_beta"},
        {"g5", 2, "Yb", {"xa", "xb", "xab"}, "two-qubit sensor measuring Y_beta"},
        {"g6", 2, "Zb", {"xa", "xb", "xab"}, "two-qubit sensor measuring Z_beta"},
        {"t1", 1, "Yb", {"xb"}, "one-qubit sensor measuring Y_beta"},
        {"t2", 1, "Zb", {"xb"}, "one-qubit sensor measuring Z_beta"},
    };
    return catalog;
}

const SchemeInfo &scheme_info(const std::string &id) {
    for (const auto &s : scheme_catalog()) {
        if (s.id == id) {
            return s;
        }
    }
    throw Error(ErrorCode::Inadmissible, "unknown scheme '" + id + "'");
}

bool is_admissible(const std::string &scheme, const std::string &initial) {
    const auto &a = scheme_info(scheme).admissible_initial;
    return std::find(a.begin(), a.end(), initial) != a.end();
}

int AccessibleSet::find(const PauliString &p) const {
    auto it = index.find(p.unsigned_part());
    return it == index.end() ? -1 : it->second;
}

void AccessibleSet::rebuild_index() {
    index.clear();
    for (size_t i = 0; i < basis.size(); i++) {
        if (!index.emplace(basis[i].unsigned_part(), static_cast<int>(i)).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate string " + render(basis[i], layout));
        }
    }
}

RawSet closure(const HamiltonianSpec &h, const PauliString &m) {
    if (!m.is_hermitian()) {
        throw Error(ErrorCode::NotHermitian, "measurement must be hermitian");
    }
    if (m.n_qubits != h.n_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "measurement and hamiltonian sizes differ");
    }
    RawSet raw;
    std::unordered_set<PauliString, PauliKeyHash> seen;
    std::deque<std::pair<PauliString, int>> queue;
    queue.emplace_back(m, 0);
    seen.insert(m.unsigned_part());
    while (!queue.empty()) {
        auto [p, d] = queue.front();
        queue.pop_front();
        raw.strings.push_back(p);
        raw.depth.push_back(d);
        for (const auto &t : heisenberg_derivative(h, p)) {
            if (seen.insert(t.string).second) {
                queue.emplace_back(t.string, d + 1);
            }
        }
    }
    return raw;
}

AccessibleSet canonical_order(const RawSet &raw, const std::string &scheme_tag, const HamiltonianSpec &h) {
    check_closed(raw.strings, h);
    AccessibleSet g;
    g.scheme_tag = scheme_tag;
    g.layout = h.layout;
    if (scheme_tag == "g1") {
        g.basis = chain_order(raw, h);
    } else if (scheme_tag == "g2") {
        g.basis = yz_order(raw, h);
    } else {
        std::vector<size_t> all(raw.strings.size());
        std::iota(all.begin(), all.end(), 0);
        for (size_t i : depth_lex_order(raw, all)) {
            g.basis.push_back(raw.strings[i]);
        }
    }
    g.rebuild_index();
    g.depth.assign(g.basis.size(), 0);
    for (size_t i = 0; i < raw.strings.size(); i++) {
        g.depth[g.find(raw.strings[i])] = raw.depth[i];
    }
    return g;
}

AccessibleSet generate(const HamiltonianSpec &h, const PauliString &m, const std::string &scheme_tag) {
    return canonical_order(closure(h, m), scheme_tag, h);
}

AccessibleSet generate_scheme(const std::string &scheme, int n_chain) {
    const auto &info = scheme_info(scheme);
    HamiltonianSpec h = HamiltonianSpec::exchange(n_chain, info.sensor_qubits);
    return generate(h, parse_pauli(info.measurement, h.layout), scheme);
}

long long g2_size(int n_chain) {
    if (n_chain < 1) {
        throw Error(ErrorCode::InvalidArgument, "chain needs at least one spin");
    }
    long long m = n_chain + 2;
    return (m * m * m - m * m) / 2;
}

bool orthogonality_check(const AccessibleSet &g, const InitialState &s) {
    for (const auto &p : g.basis) {
        if (expectation(p, s) != 0) {
            return false;
        }
    }
    return true;
}

std::string serialize(const AccessibleSet &g) {
    std::string out;
    for (const auto &p : g.basis) {
        out += render(p, g.layout);
        out += '\n';
    }
    return out;
}

AccessibleSet deserialize(const std::string &text, const QubitLayout &layout, const std::string &scheme_tag) {
    AccessibleSet g;
    g.layout = layout;
    g.scheme_tag = scheme_tag;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        PauliString p = parse_pauli(line, layout);
        if (!p.is_hermitian()) {
            throw Error(ErrorCode::NotHermitian, "line '" + line + "'");
        }
        g.basis.push_back(p);
    }
    g.depth.assign(g.basis.size(), 0);
    g.rebuild_index();
    return g;
}

}  // namespace qsensor
