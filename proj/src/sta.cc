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

#include "qsensor/sta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsensor {

namespace {

constexpr int kMaxOrbitParams = 20;
constexpr int kMaxFlipsPerTrial = 64;

// Columns of V for singular values at or below tol * sigma_max.
Eigen::MatrixXd null_columns(const Eigen::JacobiSVD<Eigen::MatrixXd> &svd, int cols, double tol) {
    const auto &s = svd.singularValues();
    double smax = s.size() ? s(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < s.size(); i++) {
        if (s(i) > tol * smax) {
            rank++;
        }
    }
    return svd.matrixV().rightCols(cols - rank);
}

bool is_zero_output(const NumericModel &m) {
    return m.b.isZero(0) || m.c.isZero(0);
}

}  // namespace

const char *verdict_name(StaVerdict v) {
    switch (v) {
        case StaVerdict::Equivalent:
            return "equivalent";
        case StaVerdict::Inequivalent:
            return "inequivalent";
        case StaVerdict::Degenerate:
            return "degenerate";
    }
    return "?";
}

StaInstance solve_similarity(const NumericModel &m1, const NumericModel &m2, Rng &rng) {
    int n = m1.dim();
    if (m2.dim() != n) {
        throw Error(ErrorCode::DimensionMismatch, "triples of different dimension");
    }
    int nn = n * n;
    // Unknown vec(S), column major: S(i,j) -> i + j*n.
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nn, nn);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            for (int q = 0; q < n; q++) {
                k(i + j * n, i + q * n) += m1.a(q, j);
                k(i + j * n, q + j * n) -= m2.a(i, q);
            }
        }
    }
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(2 * n, nn);
    Eigen::VectorXd rhs(2 * n);
    for (int i = 0; i < n; i++) {
        for (int q = 0; q < n; q++) {
            e(i, i + q * n) = m1.b(q);
            e(n + i, q + i * n) = m2.c(q);
        }
        rhs(i) = m2.b(i);
        rhs(n + i) = m1.c(i);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> esvd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
    esvd.setThreshold(1e-12);
    Eigen::VectorXd xp = esvd.solve(rhs);
    Eigen::MatrixXd ne = null_columns(esvd, nn, 1e-12);

    Eigen::MatrixXd kn = k * ne;
    Eigen::VectorXd z;
    Eigen::MatrixXd free_dirs;
    if (kn.cols() > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> ksvd(kn, Eigen::ComputeThinU | Eigen::ComputeFullV);
        ksvd.setThreshold(1e-11);
        z = ksvd.solve(-(k * xp));
        free_dirs = ne * null_columns(ksvd, static_cast<int>(kn.cols()), 1e-11);
    } else {
        z = Eigen::VectorXd::Zero(0);
        free_dirs = Eigen::MatrixXd::Zero(nn, 0);
    }
    Eigen::VectorXd x = xp + ne * z;

    // S rescaled to ||S||_F = sqrt(n).
    auto residual_of = [&](const Eigen::MatrixXd &s) {
        double sn = s.norm();
        if (sn == 0) {
            return (s * m1.a - m2.a * s).norm();
        }
        return (s * m1.a - m2.a * s).norm() * std::sqrt(static_cast<double>(n)) / sn;
    };

    StaInstance out;
    out.s = Eigen::Map<Eigen::MatrixXd>(x.data(), n, n);
    out.residual = residual_of(out.s);
    out.constraint_residual = (out.s * m1.b - m2.b).norm() + (m2.c * out.s - m1.c).norm();
    out.solution_dim = static_cast<int>(free_dirs.cols());
    out.det = out.s.determinant();
    bool consistent = out.residual <= kStaEquivalentTol && out.constraint_residual <= kStaEquivalentTol * (1 + m1.a.norm());
    if (consistent && std::abs(out.det) <= kStaDetThreshold && out.solution_dim > 0) {
        for (int d = 0; d < kStaDraws; d++) {
            Eigen::VectorXd coef(free_dirs.cols());
            for (int i = 0; i < coef.size(); i++) {
                coef(i) = rng.uniform(-1.0, 1.0);
            }
            Eigen::VectorXd xt = x + free_dirs * coef;
            Eigen::MatrixXd st = Eigen::Map<Eigen::MatrixXd>(xt.data(), n, n);
            double dt = st.determinant();
            if (std::abs(dt) > kStaDetThreshold) {
                out.s = st;
                out.det = dt;
                out.residual = residual_of(st);
                break;
            }
        }
    }
    if (consistent && std::abs(out.det) > kStaDetThreshold) {
        out.verdict = StaVerdict::Equivalent;
    } else if (out.residual > kStaInequivalentMargin) {
        out.verdict = StaVerdict::Inequivalent;
    } else {
        out.verdict = StaVerdict::Degenerate;
    }
    return out;
}

NumericModel sta_triple(const StateSpaceModel &model, const Binding &binding) {
    NumericModel m = evaluate(model, binding);
    if (model.basis.scheme_tag == "g1") {
        if (model.hamiltonian.layout.n_chain % 2 == 1) {
            return spt_reduce(m);
        }
        return m;
    }
    MinimalRealization r = kalman_minimal(m);
    return NumericModel{r.a_min, r.b_min, r.c_min};
}

StaInstance solve_similarity(const StateSpaceModel &model, const Binding &h, const Binding &h_prime, Rng &rng) {
    NumericModel t1 = sta_triple(model, h);
    NumericModel t2 = sta_triple(model, h_prime);
    for (const auto *t : {&t1, &t2}) {
        int n = t->dim();
        if (n == 0 || numeric_rank(controllability_matrix(*t)) < n || numeric_rank(observability_matrix(*t)) < n) {
            throw Error(ErrorCode::NotMinimal, "reduce the model with spt_minimal or kalman_minimal first");
        }
    }
    if (t1.dim() != t2.dim()) {
        StaInstance out;
        out.residual = 1.0;
        out.verdict = StaVerdict::Inequivalent;
        return out;
    }
    return solve_similarity(t1, t2, rng);
}

ExactStaResult solve_similarity_exact(const QMatrix &a, const QMatrix &b, const QMatrix &c, const QMatrix &a2,
                                      const QMatrix &b2, const QMatrix &c2) {
    int n = a.rows();
    int nn = n * n;
    QMatrix sys(nn + 2 * n, nn);
    QMatrix rhs(nn + 2 * n, 1);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            for (int q = 0; q < n; q++) {
                sys(i + j * n, i + q * n) += a(q, j);
                sys(i + j * n, q + j * n) -= a2(i, q);
            }
        }
    }
    for (int i = 0; i < n; i++) {
        for (int q = 0; q < n; q++) {
            sys(nn + i, i + q * n) = b(q, 0);
            sys(nn + n + i, q + i * n) = c2(0, q);
        }
        rhs(nn + i, 0) = b2(i, 0);
        rhs(nn + n + i, 0) = c(0, i);
    }
    ExactStaResult out;
    QMatrix x;
    out.consistent = exact_solve(sys, rhs, &x);
    if (out.consistent) {
        out.solution_dim = nn - exact_rank(sys);
        out.s = QMatrix(n, n);
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < n; j++) {
                out.s(i, j) = x(i + j * n, 0);
            }
        }
    }
    return out;
}

std::vector<Binding> sign_orbit(const Binding &h, const std::vector<int> &which) {
    if (which.size() > static_cast<size_t>(kMaxOrbitParams)) {
        throw Error(ErrorCode::SizeCap, "sign orbit limited to 20 parameters");
    }
    std::vector<Binding> out;
    size_t count = size_t{1} << which.size();
    for (size_t mask = 0; mask < count; mask++) {
        Binding b = h;
        for (size_t i = 0; i < which.size(); i++) {
            if ((mask >> i) & 1) {
                b[which[i]] = -b[which[i]];
            }
        }
        out.push_back(b);
    }
    return out;
}

std::vector<Binding> sign_orbit(const Binding &h) {
    std::vector<int> all(h.size());
    for (size_t i = 0; i < h.size(); i++) {
        all[i] = static_cast<int>(i);
    }
    return sign_orbit(h, all);
}

ScanReport identifiability_scan(const std::string &scheme, int n_chain, int trials, uint64_t seed, int perturbations) {
    ScanReport r;
    r.scheme = scheme;
    r.n_chain = n_chain;
    r.trials = trials;
    r.min_inequivalent_residual = INFINITY;
    r.min_perturbation = INFINITY;
    StateSpaceModel model = build_scheme(scheme, n_chain);
    Rng root(seed);
    Rng probe = root.split("probe");
    if (is_zero_output(evaluate(model, probe.binding(model.n_params())))) {
        r.vacuous = true;
        r.identifiable_in_magnitude = false;
        r.note = "zero output: x0 = 0, no information reaches the sensor";
        return r;
    }
    std::vector<int> unknown;
    for (int i = 0; i < model.n_params(); i++) {
        if (!model.hamiltonian.known[i]) {
            unknown.push_back(i);
        }
    }
    for (int t = 0; t < trials; t++) {
        Rng tr = root.split(static_cast<uint64_t>(t));
        Rng draw = tr.split("binding");
        Rng search = tr.split("search");
        Binding h = draw.binding(model.n_params());
        NumericModel base = sta_triple(model, h);
        if (numeric_rank(controllability_matrix(base)) < base.dim() ||
            numeric_rank(observability_matrix(base)) < base.dim()) {
            throw Error(ErrorCode::NotMinimal, "reduced triple is not minimal at a random binding");
        }
        auto orbit = sign_orbit(h, unknown);
        orbit.erase(orbit.begin());
        if (orbit.size() > static_cast<size_t>(kMaxFlipsPerTrial)) {
            std::shuffle(orbit.begin(), orbit.end(), draw.engine());
            orbit.resize(kMaxFlipsPerTrial);
        }
        for (const auto &hp : orbit) {
            StaInstance inst = solve_similarity(base, sta_triple(model, hp), search);
            r.sign_flip_checks++;
            r.worst_equivalent_residual = std::max(r.worst_equivalent_residual, inst.residual);
            bool ok = inst.verdict == StaVerdict::Equivalent;
            if (scheme == "g1") {
                Eigen::MatrixXd off = inst.s;
                off.diagonal().setZero();
                double od = off.cwiseAbs().maxCoeff();
                r.worst_off_diagonal = std::max(r.worst_off_diagonal, od);
                double diag_err = (inst.s.diagonal().cwiseAbs() - Eigen::VectorXd::Ones(inst.s.rows())).cwiseAbs().maxCoeff();
                ok = ok && od <= 1e-9 && diag_err <= 1e-9 && std::abs(inst.s(0, 0) - 1) <= 1e-9;
            }
            if (!ok) {
                r.sign_flip_failures++;
            } else if (r.witness.size() == 0) {
                r.witness = inst.s;
            }
        }
        for (int p = 0; p < perturbations; p++) {
            Binding hp = h;
            int k = unknown[draw.uniform_int(0, static_cast<int>(unknown.size()) - 1)];
            double u = draw.uniform(0.05, 0.25);
            hp[k] *= draw.coin() ? 1 + u : 1 - u;
            r.min_perturbation = std::min(r.min_perturbation, u);
            StaInstance inst = solve_similarity(base, sta_triple(model, hp), search);
            r.perturbation_checks++;
            r.min_inequivalent_residual = std::min(r.min_inequivalent_residual, inst.residual);
            if (inst.verdict != StaVerdict::Inequivalent) {
                r.perturbation_failures++;
            }
        }
    }
    r.identifiable_in_magnitude = r.sign_flip_failures == 0 && r.perturbation_failures == 0;
    return r;
}

std::string render_scan(const ScanReport &r) {
    std::ostringstream out;
    out << "scheme " << r.scheme << " N=" << r.n_chain << " trials=" << r.trials << "\n";
    if (r.vacuous) {
        out << "verdict vacuous (" << r.note << ")\n";
        return out.str();
    }
    out << "sign flips: " << r.sign_flip_checks - r.sign_flip_failures << "/" << r.sign_flip_checks
        << " certified, worst residual " << r.worst_equivalent_residual << "\n";
    out << "perturbations: " << r.perturbation_checks - r.perturbation_failures << "/" << r.perturbation_checks
        << " rejected, min residual " << r.min_inequivalent_residual << "\n";
    out << "verdict " << (r.identifiable_in_magnitude ? "identifiable in magnitude" : "not certified") << "\n";
    return out.str();
}

}  // namespace qsensor
