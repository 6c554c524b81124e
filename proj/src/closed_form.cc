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

#include "qsensor/closed_form.hpp"

#include "qsensor/error.hpp"

namespace qsensor {

namespace {

void check(int n_chain, const std::vector<Rational> &h, bool odd) {
    if (static_cast<int>(h.size()) != n_chain + 1) {
        throw Error(ErrorCode::DimensionMismatch, "binding needs N+1 values");
    }
    if (odd && n_chain % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "closed form is stated for odd N");
    }
}

// Chain coupling h_i, 1-based.
const Rational &hc(const std::vector<Rational> &h, int i) {
    return h.at(i + 1);
}

Rational power(const Rational &x, int e) {
    Rational r = 1;
    for (int i = 0; i < e; i++) {
        r *= x;
    }
    return r;
}

}  // namespace

Rational cm_det_closed_form(int n_chain, const std::vector<Rational> &h) {
    check(n_chain, h, false);
    Rational r = power(h[0], n_chain + 1) * power(h[1], n_chain);
    for (int k = 3; k <= n_chain + 1; k++) {
        if (k % 2) {
            r = -r;
        }
        for (int i = 1; i <= k - 2; i++) {
            r *= hc(h, i);
        }
    }
    return r;
}

std::vector<Rational> p_vec_closed_form(int n_chain, const std::vector<Rational> &h) {
    check(n_chain, h, true);
    std::vector<Rational> p(n_chain + 1, Rational(0));
    Rational last = h[1];
    for (int i = 1; i <= n_chain - 1; i++) {
        last *= hc(h, i);
    }
    p.back() = last;
    return p;
}

Rational p_bar_det_closed_form(int n_chain, const std::vector<Rational> &h) {
    check(n_chain, h, true);
    if (n_chain == 1) {
        return h[0];
    }
    Rational r = h[0] * power(h[1], n_chain - 1) * power(hc(h, n_chain - 2), 3);
    for (int i = 1; i <= (n_chain - 3) / 2; i++) {
        r *= power(hc(h, 2 * i - 1), n_chain + 2 - 2 * i) * power(hc(h, 2 * i), n_chain - 1 - 2 * i);
    }
    return r;
}

Rational k_const_closed_form(int n_chain, const std::vector<Rational> &h) {
    check(n_chain, h, true);
    if (n_chain == 1) {
        return 1;
    }
    Rational k = power(h[1], n_chain - 1);
    for (int i = 1; i <= n_chain - 2; i++) {
        k *= power(hc(h, i), n_chain - 1 - i);
    }
    return k;
}

std::vector<Rational> p_bar_inv_last_column_closed_form(int n_chain, const std::vector<Rational> &h) {
    check(n_chain, h, true);
    Rational k = k_const_closed_form(n_chain, h);
    Rational det = p_bar_det_closed_form(n_chain, h);
    std::vector<Rational> col(n_chain + 1, Rational(0));
    col[0] = -k / det;
    // row 2j+1 (1-based), j >= 1
    for (int j = 1; 2 * j + 1 <= n_chain; j++) {
        Rational v = -k * h[0] / h[1];
        for (int i = 1; i <= j - 1; i++) {
            v *= hc(h, 2 * i - 1);
            v /= hc(h, 2 * i);
        }
        col[2 * j] = v / det;
    }
    return col;
}

std::vector<Rational> a_tilde_last_column_closed_form(int n_chain, const std::vector<Rational> &h) {
    check(n_chain, h, true);
    int n = n_chain;
    std::vector<Rational> col(n + 1, Rational(0));
    for (int k = 1; k <= n; k += 2) {
        Rational v;
        if (k == n && n >= 3) {
            v = hc(h, n - 2) + hc(h, n - 1) * hc(h, n - 1) / hc(h, n - 2);
        } else if (k == 1) {
            v = h[1] * hc(h, n - 1) / h[0];
            for (int i = 1; i <= (n - 1) / 2; i++) {
                v *= hc(h, 2 * i);
                v /= hc(h, 2 * i - 1);
            }
        } else {
            v = hc(h, n - 1);
            for (int i = (k - 1) / 2; i <= (n - 1) / 2; i++) {
                v *= hc(h, 2 * i);
                v /= hc(h, 2 * i - 1);
            }
        }
        col[k - 1] = v;
    }
    return col;
}

}  // namespace qsensor
