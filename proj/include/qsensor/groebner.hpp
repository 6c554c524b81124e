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

#include <deque>
#include <vector>

#include "qsensor/poly.hpp"

namespace qsensor {

template <class F>
struct GroebnerBasis {
    std::vector<Poly<F>> generators;
    RingPtr ring;

    bool is_unit() const {
        return generators.size() == 1 && generators[0].is_constant() && !generators[0].is_zero();
    }
};

/// True iff every S-polynomial of g reduces to zero modulo g.
template <class F>
bool satisfies_buchberger_criterion(const std::vector<Poly<F>> &g) {
    for (size_t i = 0; i < g.size(); i++) {
        for (size_t j = i + 1; j < g.size(); j++) {
            if (!normal_form(s_polynomial(g[i], g[j]), g).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

/// Reduced Groebner basis under the order of `ring`. Throws Budget when more than
/// pair_cap S-pairs are processed.
template <class F>
GroebnerBasis<F> buchberger(const std::vector<Poly<F>> &gens, const RingPtr &ring, size_t pair_cap = 20000) {
    std::vector<Poly<F>> g;
    for (const auto &p : gens) {
        Poly<F> q = p.in_ring(ring);
        if (!q.is_zero()) {
            g.push_back(q.monic());
        }
    }
    if (gens.empty()) {
        throw Error(ErrorCode::InvalidArgument, "buchberger needs at least one generator");
    }
    GroebnerBasis<F> out;
    out.ring = ring;
    if (g.empty()) {
        return out;
    }
    std::deque<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < g.size(); i++) {
        for (size_t j = i + 1; j < g.size(); j++) {
            pairs.emplace_back(i, j);
        }
    }
    size_t processed = 0;
    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        if (++processed > pair_cap) {
            throw Error(ErrorCode::Budget, "buchberger pair queue cap reached");
        }
        const Monomial &li = g[i].lead().m;
        const Monomial &lj = g[j].lead().m;
        // Coprime leading monomials: the S-polynomial reduces to zero.
        if (monomial_lcm(li, lj) == monomial_mul(li, lj)) {
            continue;
        }
        Poly<F> r = normal_form(s_polynomial(g[i], g[j]), g);
        if (r.is_zero()) {
            continue;
        }
        g.push_back(r.monic());
        for (size_t k = 0; k + 1 < g.size(); k++) {
            pairs.emplace_back(k, g.size() - 1);
        }
        if (r.is_constant()) {
            break;
        }
    }
    for (const auto &p : g) {
        if (p.is_constant()) {
            out.generators = {Poly<F>::constant(ring, p.lead().c).monic()};
            return out;
        }
    }
    // Drop generators whose leading monomial is divisible by another's, then interreduce.
    std::vector<Poly<F>> minimal;
    for (size_t i = 0; i < g.size(); i++) {
        bool redundant = false;
        for (size_t j = 0; j < g.size() && !redundant; j++) {
            if (i == j) {
                continue;
            }
            if (divides(g[j].lead().m, g[i].lead().m)) {
                redundant = g[j].lead().m != g[i].lead().m || j < i;
            }
        }
        if (!redundant) {
            minimal.push_back(g[i]);
        }
    }
    for (size_t i = 0; i < minimal.size(); i++) {
        std::vector<Poly<F>> others;
        for (size_t j = 0; j < minimal.size(); j++) {
            if (j != i) {
                others.push_back(minimal[j]);
            }
        }
        Poly<F> lead_part = Poly<F>::monomial(ring, minimal[i].lead().m, minimal[i].lead().c);
        Poly<F> tail = minimal[i] - lead_part;
        minimal[i] = (lead_part + normal_form(tail, others)).monic();
    }
    const Ring &R = *ring;
    std::sort(minimal.begin(), minimal.end(),
              [&](const Poly<F> &a, const Poly<F> &b) { return R.compare(a.lead().m, b.lead().m) > 0; });
    if (!satisfies_buchberger_criterion(minimal)) {
        throw Error(ErrorCode::Numeric, "basis failed the S-pair post-check");
    }
    out.generators = minimal;
    return out;
}

}  // namespace qsensor
