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

#include "qsensor/symca.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qsensor {

RingPtr parameter_symbols(const StateSpaceModel &model) {
    return make_ring(model.params(), MonomialOrder::GrevLex);
}

namespace {

size_t term_count(const std::vector<QPoly> &v) {
    size_t n = 0;
    for (const auto &p : v) {
        n += p.terms.size();
    }
    return n;
}

// y = A x with A given by its symbolic entries.
std::vector<QPoly> apply_a(const StateSpaceModel &model, const RingPtr &ring, const std::vector<QPoly> &x) {
    std::vector<QPoly> y(model.dim, QPoly(ring));
    Monomial m(ring->nvars(), 0);
    for (const auto &e : model.a_entries) {
        if (x[e.col].is_zero()) {
            continue;
        }
        m[e.param] = 1;
        y[e.row] = y[e.row] + x[e.col].times_monomial(m, e.coeff);
        m[e.param] = 0;
    }
    return y;
}

QPoly dot(const std::vector<Rational> &c, const std::vector<QPoly> &x, const RingPtr &ring) {
    QPoly out(ring);
    for (size_t i = 0; i < c.size(); i++) {
        if (sgn(c[i]) != 0 && !x[i].is_zero()) {
            out = out + x[i].scale(c[i]);
        }
    }
    return out;
}

}  // namespace

std::vector<QPoly> symbolic_markov(const StateSpaceModel &model, int k, size_t term_budget) {
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "negative Markov count");
    }
    RingPtr ring = parameter_symbols(model);
    std::vector<QPoly> x(model.dim, QPoly(ring));
    for (int i = 0; i < model.dim; i++) {
        x[i] = QPoly::constant(ring, model.b[i]);
    }
    std::vector<QPoly> out;
    for (int j = 0; j < k; j++) {
        out.push_back(dot(model.c, x, ring));
        if (j + 1 < k) {
            x = apply_a(model, ring, x);
            size_t n = term_count(x);
            if (n > term_budget) {
                throw Error(ErrorCode::Budget, "symbolic Markov parameter " + std::to_string(j + 1) + " needs " +
                                                   std::to_string(n) + " terms (budget " +
                                                   std::to_string(term_budget) + ")");
            }
        }
    }
    return out;
}

RationalTransfer symbolic_transfer(const StateSpaceModel &model, int cap) {
    int n = model.dim;
    if (n > cap) {
        throw Error(ErrorCode::SizeCap,
                    "symbolic transfer limited to dim " + std::to_string(cap) + ", got " + std::to_string(n));
    }
    RingPtr ring = parameter_symbols(model);
    // Columns of M_k kept as symbolic vectors; A M is column-wise apply_a.
    std::vector<std::vector<QPoly>> m(n, std::vector<QPoly>(n, QPoly(ring)));
    std::vector<QPoly> coeffs(n + 1, QPoly(ring));
    coeffs[n] = QPoly::constant(ring, Rational(1));
    RationalTransfer out;
    out.numerator.assign(n, QPoly(ring));
    for (int k = 1; k <= n; k++) {
        for (int col = 0; col < n; col++) {
            m[col] = apply_a(model, ring, m[col]);
            m[col][col] = m[col][col] + coeffs[n - k + 1];
        }
        // numerator coefficient of s^{n-k} is C M_k B
        std::vector<QPoly> mb(n, QPoly(ring));
        for (int col = 0; col < n; col++) {
            if (sgn(model.b[col]) == 0) {
                continue;
            }
            for (int row = 0; row < n; row++) {
                if (!m[col][row].is_zero()) {
                    mb[row] = mb[row] + m[col][row].scale(model.b[col]);
                }
            }
        }
        out.numerator[n - k] = dot(model.c, mb, ring);
        QPoly trace(ring);
        for (int col = 0; col < n; col++) {
            std::vector<QPoly> am = apply_a(model, ring, m[col]);
            trace = trace + am[col];
        }
        coeffs[n - k] = trace.scale(Rational(-1, k));
    }
    out.denominator = coeffs;
    return out;
}

NumericTransfer numeric_transfer(const NumericModel &m) {
    int n = m.dim();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.a.cast<std::complex<double>>());
    std::vector<std::complex<double>> poly{1.0};
    for (int i = 0; i < n; i++) {
        std::complex<double> lam = es.eigenvalues()(i);
        std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
        for (size_t j = 0; j < poly.size(); j++) {
            next[j + 1] += poly[j];
            next[j] -= lam * poly[j];
        }
        poly = next;
    }
    NumericTransfer t;
    t.denominator.resize(n + 1);
    for (int i = 0; i <= n; i++) {
        t.denominator[i] = poly[i].real();
    }
    std::vector<double> mk = markov_parameters(m, n);
    t.numerator.assign(std::max(n, 1), 0.0);
    for (int p = 0; p < n; p++) {
        double s = 0;
        for (int k = p + 1; k <= n; k++) {
            s += t.denominator[k] * mk[k - p - 1];
        }
        t.numerator[p] = s;
    }
    return t;
}

namespace {

template <class T>
std::complex<double> horner(const std::vector<T> &c, std::complex<double> s) {
    std::complex<double> v = 0;
    for (size_t i = c.size(); i-- > 0;) {
        v = v * s + std::complex<double>(c[i]);
    }
    return v;
}

}  // namespace

std::complex<double> evaluate_transfer(const NumericTransfer &t, std::complex<double> s) {
    return horner(t.numerator, s) / horner(t.denominator, s);
}

std::complex<double> evaluate_transfer(const RationalTransfer &t, const std::vector<double> &binding,
                                       std::complex<double> s) {
    std::vector<double> num, den;
    for (const auto &p : t.numerator) {
        num.push_back(evaluate(p, binding));
    }
    for (const auto &p : t.denominator) {
        den.push_back(evaluate(p, binding));
    }
    return horner(num, s) / horner(den, s);
}

RingPtr theta_ring(const StateSpaceModel &model, MonomialOrder order) {
    std::vector<std::string> vars;
    for (int i = 0; i < model.n_params(); i++) {
        vars.push_back("t" + std::to_string(i + 1));
    }
    return make_ring(vars, order);
}

QPoly substitute_theta(const QPoly &p, const RingPtr &theta) {
    if (p.ring->nvars() != theta->nvars()) {
        throw Error(ErrorCode::DimensionMismatch, "theta ring has a different number of variables");
    }
    QPoly out(theta);
    for (const auto &t : p.terms) {
        Monomial m(t.m.size());
        for (size_t i = 0; i < t.m.size(); i++) {
            if (i == 0) {
                m[i] = t.m[i];
            } else if (t.m[i] % 2 != 0) {
                throw Error(ErrorCode::InvalidArgument,
                            "polynomial is odd in " + p.ring->vars[i] + ": " + p.str());
            } else {
                m[i] = t.m[i] / 2;
            }
        }
        out = out + QPoly::monomial(theta, m, t.c);
    }
    return out;
}

Poly<RatFunc> split_coefficients(const QPoly &p, const RingPtr &main, const RingPtr &coeffs) {
    int nm = main->nvars();
    if (p.ring->nvars() != nm + coeffs->nvars()) {
        throw Error(ErrorCode::DimensionMismatch, "variable split does not cover the ring");
    }
    std::map<Monomial, QPoly> grouped;
    for (const auto &t : p.terms) {
        Monomial head(t.m.begin(), t.m.begin() + nm);
        Monomial tail(t.m.begin() + nm, t.m.end());
        auto it = grouped.find(head);
        QPoly c = QPoly::monomial(coeffs, tail, t.c);
        if (it == grouped.end()) {
            grouped.emplace(head, c);
        } else {
            it->second = it->second + c;
        }
    }
    Poly<RatFunc> out(main);
    for (auto &[m, c] : grouped) {
        if (!c.is_zero()) {
            out.terms.push_back({m, RatFunc(c)});
        }
    }
    out.sort();
    return out;
}

const char *solve_verdict_name(SolveVerdict v) {
    switch (v) {
        case SolveVerdict::Unique:
            return "unique";
        case SolveVerdict::Finite:
            return "finite";
        case SolveVerdict::Infinite:
            return "infinite";
        case SolveVerdict::Empty:
            return "empty";
    }
    return "?";
}

std::vector<bool> squared_flags(const RingPtr &theta) {
    std::vector<bool> f(theta->nvars(), true);
    if (!f.empty()) {
        f[0] = false;
    }
    return f;
}

namespace {

// Real roots of sum c_i x^i through the companion matrix.
std::vector<double> real_roots(std::vector<double> c) {
    while (!c.empty() && c.back() == 0) {
        c.pop_back();
    }
    int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) {
        return {};
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; i++) {
        comp(i, i - 1) = 1;
    }
    for (int i = 0; i < deg; i++) {
        comp(i, deg - 1) = -c[i] / c[deg];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    std::vector<double> out;
    double scale = 1;
    for (int i = 0; i < deg; i++) {
        scale = std::max(scale, std::abs(es.eigenvalues()(i)));
    }
    for (int i = 0; i < deg; i++) {
        auto z = es.eigenvalues()(i);
        if (std::abs(z.imag()) <= 1e-8 * scale) {
            out.push_back(z.real());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Coefficients in x_var after plugging in known values for the later variables.
std::vector<double> univariate(const QPoly &p, int var, const std::vector<double> &known) {
    std::vector<double> c(p.degree_in(var) + 1, 0.0);
    for (const auto &t : p.terms) {
        double v = t.c.get_d();
        for (size_t i = 0; i < t.m.size(); i++) {
            if (static_cast<int>(i) != var && t.m[i]) {
                v *= std::pow(known[i], t.m[i]);
            }
        }
        c[t.m[var]] += v;
    }
    return c;
}

bool involves(const QPoly &p, int var) {
    return p.degree_in(var) > 0;
}

int first_var(const QPoly &p) {
    for (int i = 0; i < p.ring->nvars(); i++) {
        if (involves(p, i)) {
            return i;
        }
    }
    return -1;
}

}  // namespace

SolveResult solve_identifiability(const std::vector<QPoly> &equations, const std::vector<bool> &nonnegative) {
    if (equations.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no equations to solve");
    }
    RingPtr lex = with_order(equations[0].ring, MonomialOrder::Lex);
    int n = lex->nvars();
    if (static_cast<int>(nonnegative.size()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "one nonnegativity flag per variable");
    }
    SolveResult res;
    res.basis = buchberger(equations, lex);
    const auto &g = res.basis.generators;
    if (res.basis.is_unit()) {
        res.verdict = SolveVerdict::Empty;
        res.note = "inconsistent system (basis is {1})";
        return res;
    }
    for (int i = 0; i < n; i++) {
        bool pure = false;
        for (const auto &p : g) {
            const Monomial &lm = p.lead().m;
            if (lm[i] > 0 && total_degree(lm) == lm[i]) {
                pure = true;
            }
        }
        if (!pure) {
            res.verdict = SolveVerdict::Infinite;
            res.note = "positive-dimensional: no basis element has a pure power of " + lex->vars[i] + " as leading term";
            return res;
        }
    }
    // Linear triangular shape {t_i - c_i}.
    bool linear = static_cast<int>(g.size()) == n;
    for (int i = 0; linear && i < n; i++) {
        const auto &p = g[i];
        Monomial lm(n, 0);
        lm[i] = 1;
        linear = p.lead().m == lm && p.terms.size() <= 2 && (p.terms.size() == 1 || p.terms[1].m == Monomial(n, 0));
    }
    if (linear) {
        res.exact_solution.resize(n);
        bool ok = true;
        for (int i = 0; i < n; i++) {
            res.exact_solution[i] = g[i].terms.size() == 2 ? Rational(-g[i].terms[1].c) : Rational(0);
            if (nonnegative[i] && sgn(res.exact_solution[i]) < 0) {
                ok = false;
            }
        }
        res.exact = true;
        if (!ok) {
            res.verdict = SolveVerdict::Empty;
            res.note = "the only solution has a negative square";
            return res;
        }
        std::vector<double> s;
        for (const auto &v : res.exact_solution) {
            s.push_back(v.get_d());
        }
        res.solutions.push_back(s);
        res.verdict = SolveVerdict::Unique;
        return res;
    }
    // Back substitution from the last lex variable upward.
    std::vector<std::vector<double>> partial{std::vector<double>(n, 0.0)};
    for (int var = n - 1; var >= 0; var--) {
        std::vector<const QPoly *> eqs;
        for (const auto &p : g) {
            if (first_var(p) == var) {
                eqs.push_back(&p);
            }
        }
        std::vector<std::vector<double>> next;
        for (const auto &known : partial) {
            std::vector<double> roots;
            bool found = false;
            for (const QPoly *p : eqs) {
                std::vector<double> c = univariate(*p, var, known);
                double mag = 0;
                for (double x : c) {
                    mag = std::max(mag, std::abs(x));
                }
                bool nonconst = false;
                for (size_t i = 1; i < c.size(); i++) {
                    nonconst |= std::abs(c[i]) > 1e-12 * std::max(mag, 1.0);
                }
                if (!nonconst) {
                    continue;
                }
                roots = real_roots(c);
                found = true;
                break;
            }
            if (!found) {
                continue;
            }
            for (double r : roots) {
                std::vector<double> cand = known;
                cand[var] = r;
                bool ok = !(nonnegative[var] && r < -1e-10);
                for (const QPoly *p : eqs) {
                    if (!ok) {
                        break;
                    }
                    std::vector<double> c = univariate(*p, var, cand);
                    double v = 0, scale = 1;
                    for (size_t i = 0; i < c.size(); i++) {
                        v += c[i] * std::pow(r, static_cast<double>(i));
                        scale = std::max(scale, std::abs(c[i]) * std::pow(std::abs(r), static_cast<double>(i)));
                    }
                    ok = std::abs(v) <= 1e-7 * scale;
                }
                if (ok) {
                    if (nonnegative[var]) {
                        cand[var] = std::max(r, 0.0);
                    }
                    bool dup = false;
                    for (const auto &e : next) {
                        bool same = true;
                        for (int j = var; j < n; j++) {
                            same &= std::abs(e[j] - cand[j]) <= 1e-9 * std::max(1.0, std::abs(cand[j]));
                        }
                        dup |= same;
                    }
                    if (!dup) {
                        next.push_back(cand);
                    }
                }
            }
        }
        partial = next;
    }
    res.solutions = partial;
    if (partial.empty()) {
        res.verdict = SolveVerdict::Empty;
        res.note = "no admissible real solution";
    } else if (partial.size() == 1) {
        res.verdict = SolveVerdict::Unique;
    } else {
        res.verdict = SolveVerdict::Finite;
        res.note = std::to_string(partial.size()) + " admissible real solutions";
    }
    return res;
}

}  // namespace qsensor
