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

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsensor/error.hpp"

namespace qsensor {

using Rational = mpq_class;

enum class MonomialOrder { Lex, GrevLex };

using Monomial = std::vector<int>;

/// Variable names plus the monomial order. Variable 0 has the highest priority.
struct Ring {
    std::vector<std::string> vars;
    MonomialOrder order = MonomialOrder::GrevLex;

    int nvars() const {
        return static_cast<int>(vars.size());
    }
    int var_index(const std::string &name) const;
    /// Positive when a > b.
    int compare(const Monomial &a, const Monomial &b) const;
};

using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(std::vector<std::string> vars, MonomialOrder order = MonomialOrder::GrevLex);
RingPtr with_order(const RingPtr &ring, MonomialOrder order);

bool divides(const Monomial &a, const Monomial &b);
Monomial monomial_lcm(const Monomial &a, const Monomial &b);
Monomial monomial_div(const Monomial &a, const Monomial &b);
Monomial monomial_mul(const Monomial &a, const Monomial &b);
int total_degree(const Monomial &m);
std::string monomial_str(const Monomial &m, const Ring &ring);

template <class F>
struct Term {
    Monomial m;
    F c;
};

/// Coefficient-field hooks; specialised for Rational and RatFunc.
template <class F>
struct FieldOps;

/// Sparse multivariate polynomial, terms kept in strictly decreasing order.
template <class F>
class Poly {
   public:
    using Ops = FieldOps<F>;

    RingPtr ring;
    std::vector<Term<F>> terms;

    Poly() = default;
    explicit Poly(RingPtr r) : ring(std::move(r)) {
    }

    static Poly constant(const RingPtr &r, const F &c) {
        Poly p(r);
        if (!Ops::is_zero(c)) {
            p.terms.push_back({Monomial(r->nvars(), 0), c});
        }
        return p;
    }
    static Poly variable(const RingPtr &r, int i, int power = 1) {
        Poly p(r);
        Monomial m(r->nvars(), 0);
        m[i] = power;
        p.terms.push_back({m, Ops::one(r, p)});
        return p;
    }
    static Poly monomial(const RingPtr &r, const Monomial &m, const F &c) {
        Poly p(r);
        if (!Ops::is_zero(c)) {
            p.terms.push_back({m, c});
        }
        return p;
    }

    bool is_zero() const {
        return terms.empty();
    }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && total_degree(terms[0].m) == 0);
    }
    const Term<F> &lead() const {
        if (terms.empty()) {
            throw Error(ErrorCode::InvalidArgument, "leading term of zero polynomial");
        }
        return terms.front();
    }
    int total_deg() const {
        int d = -1;
        for (const auto &t : terms) {
            d = std::max(d, total_degree(t.m));
        }
        return d;
    }
    int degree_in(int var) const {
        int d = -1;
        for (const auto &t : terms) {
            d = std::max(d, t.m[var]);
        }
        return d;
    }
    /// Coefficient of an exact monomial (zero if absent).
    F coeff(const Monomial &m) const {
        for (const auto &t : terms) {
            if (t.m == m) {
                return t.c;
            }
        }
        return Ops::zero_like(*this);
    }

    /// Same polynomial re-sorted under another ring with identical variables.
    Poly in_ring(const RingPtr &r) const {
        if (r->vars != ring->vars) {
            throw Error(ErrorCode::InvalidArgument, "rings have different variables");
        }
        Poly p(r);
        p.terms = terms;
        p.sort();
        return p;
    }

    void sort() {
        const Ring &R = *ring;
        std::sort(terms.begin(), terms.end(),
                  [&](const Term<F> &a, const Term<F> &b) { return R.compare(a.m, b.m) > 0; });
    }

    Poly operator-() const {
        Poly p = *this;
        for (auto &t : p.terms) {
            t.c = Ops::neg(t.c);
        }
        return p;
    }

    Poly operator+(const Poly &o) const {
        return combine(o, false);
    }
    Poly operator-(const Poly &o) const {
        return combine(o, true);
    }

    Poly operator*(const Poly &o) const {
        check_ring(o);
        if (is_zero() || o.is_zero()) {
            return Poly(ring);
        }
        const Ring &R = *ring;
        auto cmp = [&](const Monomial &a, const Monomial &b) { return R.compare(a, b) > 0; };
        std::map<Monomial, F, decltype(cmp)> acc(cmp);
        for (const auto &a : terms) {
            for (const auto &b : o.terms) {
                Monomial m = monomial_mul(a.m, b.m);
                F c = Ops::mul(a.c, b.c);
                auto it = acc.find(m);
                if (it == acc.end()) {
                    acc.emplace(std::move(m), std::move(c));
                } else {
                    it->second = Ops::add(it->second, c);
                }
            }
        }
        Poly p(ring);
        for (auto &[m, c] : acc) {
            if (!Ops::is_zero(c)) {
                p.terms.push_back({m, c});
            }
        }
        return p;
    }

    Poly scale(const F &c) const {
        Poly p(ring);
        if (Ops::is_zero(c)) {
            return p;
        }
        p.terms.reserve(terms.size());
        for (const auto &t : terms) {
            p.terms.push_back({t.m, Ops::mul(t.c, c)});
        }
        return p;
    }

    Poly times_monomial(const Monomial &m, const F &c) const {
        Poly p(ring);
        if (Ops::is_zero(c)) {
            return p;
        }
        p.terms.reserve(terms.size());
        for (const auto &t : terms) {
            p.terms.push_back({monomial_mul(t.m, m), Ops::mul(t.c, c)});
        }
        return p;
    }

    Poly pow(unsigned e) const {
        Poly result = constant(ring, Ops::one(ring, *this));
        Poly base = *this;
        while (e) {
            if (e & 1) {
                result = result * base;
            }
            e >>= 1;
            if (e) {
                base = base * base;
            }
        }
        return result;
    }

    /// Leading coefficient scaled to one.
    Poly monic() const {
        if (is_zero()) {
            return *this;
        }
        return scale(Ops::inv(lead().c));
    }

    bool operator==(const Poly &o) const {
        if (terms.size() != o.terms.size()) {
            return false;
        }
        for (size_t i = 0; i < terms.size(); i++) {
            if (terms[i].m != o.terms[i].m || !Ops::equal(terms[i].c, o.terms[i].c)) {
                return false;
            }
        }
        return true;
    }
    bool operator!=(const Poly &o) const {
        return !(*this == o);
    }

    std::string str() const {
        if (terms.empty()) {
            return "0";
        }
        std::string out;
        for (size_t i = 0; i < terms.size(); i++) {
            const auto &t = terms[i];
            bool neg = Ops::is_negative(t.c);
            F mag = neg ? Ops::neg(t.c) : t.c;
            if (i == 0) {
                out += neg ? "-" : "";
            } else {
                out += neg ? " - " : " + ";
            }
            bool unit = Ops::is_one(mag);
            bool has_vars = total_degree(t.m) > 0;
            if (!unit || !has_vars) {
                out += Ops::str(mag);
                if (has_vars) {
                    out += "*";
                }
            }
            if (has_vars) {
                out += monomial_str(t.m, *ring);
            }
        }
        return out;
    }

   private:
    void check_ring(const Poly &o) const {
        if (ring != o.ring && (ring->vars != o.ring->vars || ring->order != o.ring->order)) {
            throw Error(ErrorCode::InvalidArgument, "polynomials live in different rings");
        }
    }

    Poly combine(const Poly &o, bool subtract) const {
        check_ring(o);
        Poly p(ring ? ring : o.ring);
        const Ring &R = *p.ring;
        size_t i = 0, j = 0;
        p.terms.reserve(terms.size() + o.terms.size());
        while (i < terms.size() || j < o.terms.size()) {
            int c;
            if (i == terms.size()) {
                c = -1;
            } else if (j == o.terms.size()) {
                c = 1;
            } else {
                c = R.compare(terms[i].m, o.terms[j].m);
            }
            if (c > 0) {
                p.terms.push_back(terms[i++]);
            } else if (c < 0) {
                const auto &t = o.terms[j++];
                p.terms.push_back({t.m, subtract ? Ops::neg(t.c) : t.c});
            } else {
                F s = subtract ? Ops::sub(terms[i].c, o.terms[j].c) : Ops::add(terms[i].c, o.terms[j].c);
                if (!Ops::is_zero(s)) {
                    p.terms.push_back({terms[i].m, s});
                }
                i++;
                j++;
            }
        }
        return p;
    }
};

template <>
struct FieldOps<Rational> {
    static bool is_zero(const Rational &a) {
        return sgn(a) == 0;
    }
    static bool is_one(const Rational &a) {
        return a == 1;
    }
    static bool is_negative(const Rational &a) {
        return sgn(a) < 0;
    }
    static bool equal(const Rational &a, const Rational &b) {
        return a == b;
    }
    static Rational add(const Rational &a, const Rational &b) {
        return Rational(a + b);
    }
    static Rational sub(const Rational &a, const Rational &b) {
        return Rational(a - b);
    }
    static Rational mul(const Rational &a, const Rational &b) {
        return Rational(a * b);
    }
    static Rational neg(const Rational &a) {
        return Rational(-a);
    }
    static Rational inv(const Rational &a) {
        if (sgn(a) == 0) {
            throw Error(ErrorCode::Singular, "division by zero");
        }
        return Rational(1 / a);
    }
    static Rational div(const Rational &a, const Rational &b) {
        return mul(a, inv(b));
    }
    static Rational one(const RingPtr &, const Poly<Rational> &) {
        return Rational(1);
    }
    static Rational zero_like(const Poly<Rational> &) {
        return Rational(0);
    }
    static std::string str(const Rational &a) {
        return a.get_str();
    }
};

using QPoly = Poly<Rational>;

/// Division of a by b: a = q*b + r, no term of r divisible by lead(b).
template <class F>
std::pair<Poly<F>, Poly<F>> divide(const Poly<F> &a, const Poly<F> &b) {
    using Ops = FieldOps<F>;
    Poly<F> q(a.ring), r(a.ring), p = a;
    const auto &lb = b.lead();
    F inv = Ops::inv(lb.c);
    while (!p.is_zero()) {
        const auto &lp = p.lead();
        if (divides(lb.m, lp.m)) {
            Monomial m = monomial_div(lp.m, lb.m);
            F c = Ops::mul(lp.c, inv);
            q = q + Poly<F>::monomial(a.ring, m, c);
            p = p - b.times_monomial(m, c);
        } else {
            r = r + Poly<F>::monomial(a.ring, lp.m, lp.c);
            p.terms.erase(p.terms.begin());
        }
    }
    return {q, r};
}

/// Full reduction of f modulo the list g.
template <class F>
Poly<F> normal_form(const Poly<F> &f, const std::vector<Poly<F>> &g) {
    using Ops = FieldOps<F>;
    Poly<F> p = f, r(f.ring);
    while (!p.is_zero()) {
        const auto &lp = p.lead();
        bool reduced = false;
        for (const auto &gi : g) {
            if (gi.is_zero()) {
                continue;
            }
            const auto &lg = gi.lead();
            if (divides(lg.m, lp.m)) {
                Monomial m = monomial_div(lp.m, lg.m);
                F c = Ops::div(lp.c, lg.c);
                p = p - gi.times_monomial(m, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            r.terms.push_back(p.terms.front());
            p.terms.erase(p.terms.begin());
        }
    }
    return r;
}

template <class F>
Poly<F> s_polynomial(const Poly<F> &f, const Poly<F> &g) {
    using Ops = FieldOps<F>;
    const auto &lf = f.lead();
    const auto &lg = g.lead();
    Monomial l = monomial_lcm(lf.m, lg.m);
    return f.times_monomial(monomial_div(l, lf.m), Ops::inv(lf.c)) -
           g.times_monomial(monomial_div(l, lg.m), Ops::inv(lg.c));
}

/// Exact quotient a/b, or nothing if b does not divide a.
template <class F>
bool exact_divide(const Poly<F> &a, const Poly<F> &b, Poly<F> *q) {
    auto [qq, r] = divide(a, b);
    if (!r.is_zero()) {
        return false;
    }
    if (q) {
        *q = qq;
    }
    return true;
}

/// Parses e.g. "10*t1^3 + 7*t1*t2 - v2"; accepts parentheses, integer powers and rational
/// constants such as 3/4.
QPoly parse_poly(const std::string &text, const RingPtr &ring);

Rational evaluate(const QPoly &p, const std::vector<Rational> &point);
double evaluate(const QPoly &p, const std::vector<double> &point);

/// Replaces each variable i by images[i] (polynomials in the target ring).
template <class F>
Poly<F> substitute(const Poly<F> &p, const std::vector<Poly<F>> &images, const RingPtr &target) {
    Poly<F> out(target);
    for (const auto &t : p.terms) {
        Poly<F> term = Poly<F>::constant(target, t.c);
        for (size_t i = 0; i < t.m.size(); i++) {
            if (t.m[i]) {
                term = term * images[i].pow(static_cast<unsigned>(t.m[i]));
            }
        }
        out = out + term;
    }
    return out;
}

/// Element of Q(v): num/den over a polynomial ring, den kept monic.
class RatFunc {
   public:
    QPoly num;
    QPoly den;

    RatFunc() = default;
    explicit RatFunc(const QPoly &n);
    RatFunc(const QPoly &n, const QPoly &d);
    static RatFunc constant(const RingPtr &r, const Rational &c);

    bool is_zero() const {
        return num.is_zero();
    }
    RatFunc operator+(const RatFunc &o) const;
    RatFunc operator-(const RatFunc &o) const;
    RatFunc operator*(const RatFunc &o) const;
    RatFunc operator/(const RatFunc &o) const;
    RatFunc operator-() const;
    /// Equality as rational functions (cross multiplication).
    bool equals(const RatFunc &o) const;
    Rational evaluate(const std::vector<Rational> &point) const;
    std::string str() const;

   private:
    void normalize();
};

template <>
struct FieldOps<RatFunc> {
    static bool is_zero(const RatFunc &a) {
        return a.is_zero();
    }
    static bool is_one(const RatFunc &a) {
        return a.den.is_constant() && a.num.is_constant() && !a.num.is_zero() && a.num.lead().c == a.den.lead().c;
    }
    static bool is_negative(const RatFunc &a) {
        return a.den.is_constant() && a.num.is_constant() && !a.num.is_zero() && sgn(a.num.lead().c) < 0;
    }
    static bool equal(const RatFunc &a, const RatFunc &b) {
        return a.equals(b);
    }
    static RatFunc add(const RatFunc &a, const RatFunc &b) {
        return a + b;
    }
    static RatFunc sub(const RatFunc &a, const RatFunc &b) {
        return a - b;
    }
    static RatFunc mul(const RatFunc &a, const RatFunc &b) {
        return a * b;
    }
    static RatFunc neg(const RatFunc &a) {
        return -a;
    }
    static RatFunc inv(const RatFunc &a);
    static RatFunc div(const RatFunc &a, const RatFunc &b) {
        return a / b;
    }
    static RatFunc one(const RingPtr &, const Poly<RatFunc> &p);
    static RatFunc zero_like(const Poly<RatFunc> &p);
    static std::string str(const RatFunc &a) {
        return a.str();
    }
};

/// Coefficient ring used by Poly<RatFunc>; must be set before building such polynomials.
void set_parameter_ring(const RingPtr &ring);
RingPtr parameter_ring();

}  // namespace qsensor
