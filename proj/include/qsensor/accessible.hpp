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
#include <unordered_map>
#include <vector>

#include "qsensor/pauli.hpp"

namespace qsensor {

/// Row of the scheme catalog.
struct SchemeInfo {
    std::string id;
    int sensor_qubits;
    std::string measurement;
    std::vector<std::string> admissible_initial;
    std::string description;
};

/// The eight sensing schemes: g1..g6 on a two-qubit sensor, t1/t2 on a single qubit.
const std::vector<SchemeInfo> &scheme_catalog();
const SchemeInfo &scheme_info(const std::string &id);
bool is_admissible(const std::string &scheme, const std::string &initial);

struct AccessibleSet {
    /// Hermitian strings, sign carried in the phase.
    std::vector<PauliString> basis;
    /// BFS depth of each element from the measurement.
    std::vector<int> depth;
    std::unordered_map<PauliString, int, PauliKeyHash> index;
    std::string scheme_tag;
    QubitLayout layout;

    int size() const {
        return static_cast<int>(basis.size());
    }
    /// Position of the element with these letters (any sign), or -1.
    int find(const PauliString &p) const;
    void rebuild_index();
};

/// Strings reached from m by repeated heisenberg_derivative, with their BFS depth.
struct RawSet {
    std::vector<PauliString> strings;
    std::vector<int> depth;
};

RawSet closure(const HamiltonianSpec &h, const PauliString &m);

/// Orders (and for g1 re-signs) a closed set. Throws NotClosed if it is not closed under h.
AccessibleSet canonical_order(const RawSet &raw, const std::string &scheme_tag, const HamiltonianSpec &h);

AccessibleSet generate(const HamiltonianSpec &h, const PauliString &m, const std::string &scheme_tag = "custom");
AccessibleSet generate_scheme(const std::string &scheme, int n_chain);

/// (N+2)^3/2 - (N+2)^2/2.
long long g2_size(int n_chain);

/// True iff every basis element has zero expectation in s.
bool orthogonality_check(const AccessibleSet &g, const InitialState &s);

/// One rendered string per line.
std::string serialize(const AccessibleSet &g);
AccessibleSet deserialize(const std::string &text, const QubitLayout &layout, const std::string &scheme_tag = "custom");

}  // namespace qsensor
