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

#include "qsensor/poly.hpp"

#include <cctype>
#include <cmath>

namespace qsensor {

int Ring::var_index(const std::string &name) const {
    for (size_t i = 0; i < vars.size(); i++) {
        if (vars[i] == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

int Ring::compare(const Monomial &a, const Monomial &b) const {
    if (order == MonomialOrder::GrevLex) {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) {
            return da > db ? 1 : -1;
        }
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; i--) {
            if (a[i] != b[i]) {
                return a[i] < b[i] ? 1 : -1;
            }
        }
        return 0;
    }
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] != b[i]) {
            return a[i] > b[i] ? 1 : -1;
        }
    }
    return 0;
}

RingPtr make_ring(std::vector<std::string> vars, MonomialOrder order) {
    auto r = std::make_shared<Ring>();
    r->vars = std::move(vars);
    r->order = order;
    return r;
}

RingPtr with_order(const RingPtr &ring, MonomialOrder order) {
    return make_ring(ring->vars, order);
}

bool divides(const Monomial &a, const Monomial &b) {
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

Monomial monomial_lcm(const Monomial &a, const Monomial &b) {
    Monomial m(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        m[i] = std::max(a[i], b[i]);
    }
    return m;
}

Monomial monomial_div(const Monomial &a, const Monomial &b) {
    Monomial m(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        m[i] = a[i] - b[i];
    }
    return m;
}

Monomial monomial_mul(const Monomial &a, const Monomial &b) {
    Monomial m(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        m[i] = a[i] + b[i];
    }
    return m;
}

int total_degree(const Monomial &m) {
    int d = 0;
    for (int e : m) {
        d += e;
    }
    return d;
}

std::string monomial_str(const Monomial &m, const Ring &ring) {
    std::string out;
    for (size_t i = 0; i < m.size(); i++) {
        if (m[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += ring.vars[i];
        if (m[i] > 1) {
            out += "^" + std::to_string(m[i]);
        }
    }
    return out;
}

namespace {

// Recursive descent over: expr = term (('+'|'-') term)*, term = factor ('*' factor)*,
// factor = ('-')? atom ('^' int)?, atom = number ('/' number)? | var | '(' expr ')'.
class PolyParser {
   public:
    PolyParser(const std::string &text, const RingPtr &ring) : s_(text), ring_(ring) {
    }

    QPoly parse() {
        QPoly p = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return p;
    }

   private:
    const std::string &s_;
    RingPtr ring_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string &what) {
        throw Error(ErrorCode::Parse, what + " at column " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            pos_++;
        }
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            pos_++;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            pos_++;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        return s_.substr(start, pos_ - start);
    }
    QPoly expr() {
        QPoly p = term();
        while (true) {
            if (eat('+')) {
                p = p + term();
            } else if (eat('-')) {
                p = p - term();
            } else {
                return p;
            }
        }
    }
    QPoly term() {
        QPoly p = factor();
        while (eat('*')) {
            p = p * factor();
        }
        return p;
    }
    QPoly factor() {
        if (eat('-')) {
            return -factor();
        }
        QPoly p = atom();
        if (eat('^')) {
            p = p.pow(static_cast<unsigned>(std::stoul(digits())));
        }
        return p;
    }
    QPoly atom() {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end");
        }
        char c = s_[pos_];
        if (c == '(') {
            pos_++;
            QPoly p = expr();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational v(digits());
            if (eat('/')) {
                v /= Rational(digits());
            }
            return QPoly::constant(ring_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                pos_++;
            }
            std::string name = s_.substr(start, pos_ - start);
            int i = ring_->var_index(name);
            if (i < 0) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return QPoly::variable(ring_, i);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

RingPtr g_parameter_ring;

QPoly monomial_content(const QPoly &p) {
    // Largest monomial dividing every term.
    Monomial m = p.terms.front().m;
    for (const auto &t : p.terms) {
        for (size_t i = 0; i < m.size(); i++) {
            m[i] = std::min(m[i], t.m[i]);
        }
    }
    return QPoly::monomial(p.ring, m, Rational(1));
}

}  // namespace

QPoly parse_poly(const std::string &text, const RingPtr &ring) {
    return PolyParser(text, ring).parse();
}

Rational evaluate(const QPoly &p, const std::vector<Rational> &point) {
    if (static_cast<int>(point.size()) != p.ring->nvars()) {
        throw Error(ErrorCode::DimensionMismatch, "evaluation point size");
    }
    Rational out = 0;
    for (const auto &t : p.terms) {
        Rational v = t.c;
        for (size_t i = 0; i < t.m.size(); i++) {
            for (int e = 0; e < t.m[i]; e++) {
                v *= point[i];
            }
        }
        out += v;
    }
    return out;
}

double evaluate(const QPoly &p, const std::vector<double> &point) {
    if (static_cast<int>(point.size()) != p.ring->nvars()) {
        throw Error(ErrorCode::DimensionMismatch, "evaluation point size");
    }
    double out = 0;
    for (const auto &t : p.terms) {
        double v = t.c.get_d();
        for (size_t i = 0; i < t.m.size(); i++) {
            v *= std::pow(point[i], t.m[i]);
        }
        out += v;
    }
    return out;
}

RatFunc::RatFunc(const QPoly &n) : num(n), den(QPoly::constant(n.ring, Rational(1))) {
}

RatFunc::RatFunc(const QPoly &n, const QPoly &d) : num(n), den(d) {
    if (den.is_zero()) {
        throw Error(ErrorCode::Singular, "rational function with zero denominator");
    }
    normalize();
}

RatFunc RatFunc::constant(const RingPtr &r, const Rational &c) {
    return RatFunc(QPoly::constant(r, c));
}

void RatFunc::normalize() {
    if (num.is_zero()) {
        den = QPoly::constant(den.ring, Rational(1));
        return;
    }
    QPoly g = monomial_content(num);
    QPoly gd = monomial_content(den);
    Monomial common(g.lead().m.size());
    for (size_t i = 0; i < common.size(); i++) {
        common[i] = std::min(g.lead().m[i], gd.lead().m[i]);
    }
    if (total_degree(common) > 0) {
        QPoly c = QPoly::monomial(num.ring, common, Rational(1));
        num = divide(num, c).first;
        den = divide(den, c).first;
    }
    Rational lc = den.lead().c;
    if (lc != 1) {
        Rational inv = 1 / lc;
        num = num.scale(inv);
        den = den.scale(inv);
    }
    if (!den.is_constant()) {
        QPoly q;
        if (exact_divide(num, den, &q)) {
            num = q;
            den = QPoly::constant(den.ring, Rational(1));
        }
    }
}

RatFunc RatFunc::operator+(const RatFunc &o) const {
    if (den == o.den) {
        return RatFunc(num + o.num, den);
    }
    return RatFunc(num * o.den + o.num * den, den * o.den);
}

RatFunc RatFunc::operator-(const RatFunc &o) const {
    if (den == o.den) {
        return RatFunc(num - o.num, den);
    }
    return RatFunc(num * o.den - o.num * den, den * o.den);
}

RatFunc RatFunc::operator*(const RatFunc &o) const {
    return RatFunc(num * o.num, den * o.den);
}

RatFunc RatFunc::operator/(const RatFunc &o) const {
    if (o.is_zero()) {
        throw Error(ErrorCode::Singular, "division by the zero rational function");
    }
    return RatFunc(num * o.den, den * o.num);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num = -r.num;
    return r;
}

bool RatFunc::equals(const RatFunc &o) const {
    return num * o.den == o.num * den;
}

Rational RatFunc::evaluate(const std::vector<Rational> &point) const {
    Rational d = qsensor::evaluate(den, point);
    if (d == 0) {
        throw Error(ErrorCode::Singular, "denominator vanishes at evaluation point");
    }
    return qsensor::evaluate(num, point) / d;
}

std::string RatFunc::str() const {
    bool simple_num = num.terms.size() <= 1;
    std::string n = simple_num ? num.str() : "(" + num.str() + ")";
    if (den.is_constant() && den.lead().c == 1) {
        return n;
    }
    bool simple_den = den.terms.size() == 1 && (den.lead().c == 1 || total_degree(den.lead().m) == 0);
    return n + "/" + (simple_den ? den.str() : "(" + den.str() + ")");
}

RatFunc FieldOps<RatFunc>::inv(const RatFunc &a) {
    if (a.is_zero()) {
        throw Error(ErrorCode::Singular, "inverse of zero");
    }
    return RatFunc(a.den, a.num);
}

RatFunc FieldOps<RatFunc>::one(const RingPtr &, const Poly<RatFunc> &p) {
    if (!p.terms.empty()) {
        return RatFunc::constant(p.terms.front().c.num.ring, Rational(1));
    }
    if (!g_parameter_ring) {
        throw Error(ErrorCode::InvalidArgument, "no parameter ring set for rational-function coefficients");
    }
    return RatFunc::constant(g_parameter_ring, Rational(1));
}

RatFunc FieldOps<RatFunc>::zero_like(const Poly<RatFunc> &p) {
    RatFunc one = FieldOps<RatFunc>::one(p.ring, p);
    return RatFunc::constant(one.num.ring, Rational(0));
}

void set_parameter_ring(const RingPtr &ring) {
    g_parameter_ring = ring;
}

RingPtr parameter_ring() {
    return g_parameter_ring;
}

}  // namespace qsensor
