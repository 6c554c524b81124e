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

#include "qsensor/realization.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qsensor {

namespace {

constexpr int kExactRankLimit = 12;

// Orthonormal basis of span{v, Av, A^2 v, ...} by Arnoldi with one reorthogonalization pass.
Eigen::MatrixXd krylov_basis(const Eigen::MatrixXd &a, const Eigen::VectorXd &v0, double tol) {
    int n = static_cast<int>(a.rows());
    Eigen::MatrixXd basis(n, 0);
    double scale = std::max(1.0, a.norm());
    double nv = v0.norm();
    if (nv == 0) {
        return basis;
    }
    Eigen::VectorXd w = v0 / nv;
    while (basis.cols() < n) {
        basis.conservativeResize(n, basis.cols() + 1);
        basis.col(basis.cols() - 1) = w;
        Eigen::VectorXd next = a * w;
        double before = next.norm();
        for (int pass = 0; pass < 2; pass++) {
            next -= basis * (basis.transpose() * next);
        }
        double after = next.norm();
        if (after <= tol * std::max(before, scale)) {
            break;
        }
        w = next / after;
    }
    return basis;
}

}  // namespace

int numeric_rank(const Eigen::MatrixXd &m) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0) {
        return 0;
    }
    double dim = static_cast<double>(std::max(m.rows(), m.cols()));
    double cut = s(0) * dim * std::numeric_limits<double>::epsilon() * 64;
    int r = 0;
    for (int i = 0; i < s.size(); i++) {
        if (s(i) > cut) {
            r++;
        }
    }
    return r;
}

Eigen::MatrixXd controllability_matrix(const NumericModel &m) {
    int n = m.dim();
    Eigen::MatrixXd cm(n, n);
    Eigen::VectorXd v = m.b;
    for (int k = 0; k < n; k++) {
        cm.col(k) = v;
        v = m.a * v;
    }
    return cm;
}

Eigen::MatrixXd observability_matrix(const NumericModel &m) {
    int n = m.dim();
    Eigen::MatrixXd om(n, n);
    Eigen::RowVectorXd v = m.c;
    for (int k = 0; k < n; k++) {
        om.row(k) = v;
        v = v * m.a;
    }
    return om;
}

QMatrix controllability_matrix(const ExactModel &m) {
    int n = m.a.rows();
    QMatrix cm(n, n);
    QMatrix v = m.b;
    for (int k = 0; k < n; k++) {
        for (int i = 0; i < n; i++) {
            cm(i, k) = v(i, 0);
        }
        v = m.a * v;
    }
    return cm;
}

QMatrix observability_matrix(const ExactModel &m) {
    int n = m.a.rows();
    QMatrix om(n, n);
    QMatrix v = m.c;
    for (int k = 0; k < n; k++) {
        for (int i = 0; i < n; i++) {
            om(k, i) = v(0, i);
        }
        v = v * m.a;
    }
    return om;
}

RankReport controllability_rank(const StateSpaceModel &model, const Binding &binding) {
    RankReport r;
    NumericModel m = evaluate(model, binding);
    r.matrix = controllability_matrix(m);
    if (model.dim <= kExactRankLimit) {
        ExactBinding q(binding.begin(), binding.end());
        r.rank = exact_rank(controllability_matrix(evaluate_exact(model, q)));
        r.exact = true;
    } else {
        r.rank = numeric_rank(r.matrix);
    }
    return r;
}

RankReport observability_rank(const StateSpaceModel &model, const Binding &binding) {
    RankReport r;
    NumericModel m = evaluate(model, binding);
    r.matrix = observability_matrix(m);
    if (model.dim <= kExactRankLimit) {
        ExactBinding q(binding.begin(), binding.end());
        r.rank = exact_rank(observability_matrix(evaluate_exact(model, q)));
        r.exact = true;
    } else {
        r.rank = numeric_rank(r.matrix);
    }
    return r;
}

PbhReport pbh_test(const NumericModel &m, std::complex<double> lambda) {
    int n = m.dim();
    Eigen::MatrixXcd stacked(n + 1, n);
    stacked.row(0) = m.c.cast<std::complex<double>>();
    stacked.bottomRows(n) = m.a.cast<std::complex<double>>() - lambda * Eigen::MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
    const auto &s = svd.singularValues();
    double cut = s(0) * (n + 1) * std::numeric_limits<double>::epsilon() * 64;
    PbhReport r;
    r.dim = n;
    for (int i = 0; i < s.size(); i++) {
        if (s(i) > cut) {
            r.rank++;
        }
    }
    r.deficient = r.rank < n;
    return r;
}

PbhReport pbh_test(const StateSpaceModel &model, const Binding &binding, std::complex<double> lambda) {
    return pbh_test(evaluate(model, binding), lambda);
}

SptArtifacts spt_minimal(const StateSpaceModel &model, const ExactBinding &binding) {
    int n_chain = model.hamiltonian.layout.n_chain;
    if (model.basis.scheme_tag != "g1" || n_chain % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "structure preserving reduction needs the g1 scheme with odd N");
    }
    ExactModel e = evaluate_exact(model, binding);
    int dim = model.dim;
    int m = dim - 1;
    SptArtifacts s;
    s.p_matrix = QMatrix(dim, dim);
    QMatrix row = e.c;
    for (int k = 0; k < m; k++) {
        for (int j = 0; j < dim; j++) {
            s.p_matrix(k, j) = row(0, j);
        }
        row = row * e.a;
    }
    s.p_matrix(m, m) = 1;
    s.p_bar = s.p_matrix.block(0, 0, m, m);
    s.p_vec = s.p_matrix.block(0, m, m, 1);
    s.det_p_bar = exact_det(s.p_bar);
    if (s.det_p_bar == 0) {
        throw Error(ErrorCode::Singular, "observability block is singular at this binding");
    }
    s.p_bar_inv = exact_inverse(s.p_bar);
    QMatrix shift = s.p_bar_inv * s.p_vec;
    s.q = QMatrix::identity(dim);
    s.q_inv = QMatrix::identity(dim);
    for (int i = 0; i < m; i++) {
        s.q(i, m) = shift(i, 0);
        s.q_inv(i, m) = -shift(i, 0);
    }
    s.ul = e.a.block(0, 0, m, m);
    s.ur = e.a.block(0, m, m, 1);
    s.dl = e.a.block(m, 0, 1, m);
    s.dr = e.a.block(m, m, 1, 1);
    s.a_tilde = s.ul + shift * s.dl;
    s.b_tilde = e.b.block(0, 0, m, 1);
    s.c_tilde = e.c.block(0, 0, 1, m);
    return s;
}

NumericModel spt_reduce(const NumericModel &nm) {
    int dim = nm.dim();
    int m = dim - 1;
    Eigen::MatrixXd p(m, dim);
    Eigen::RowVectorXd row = nm.c;
    for (int k = 0; k < m; k++) {
        p.row(k) = row;
        row = row * nm.a;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(p.leftCols(m));
    Eigen::VectorXd shift = lu.solve(p.col(m));
    NumericModel out;
    out.a = nm.a.topLeftCorner(m, m) + shift * nm.a.row(m).head(m);
    out.b = nm.b.head(m);
    out.c = nm.c.head(m);
    return out;
}

MinimalRealization kalman_minimal(const NumericModel &m, double tol) {
    MinimalRealization r;
    Eigen::MatrixXd v = krylov_basis(m.a, m.b, tol);
    r.controllable_dim = static_cast<int>(v.cols());
    Eigen::MatrixXd a1 = v.transpose() * m.a * v;
    Eigen::VectorXd b1 = v.transpose() * m.b;
    Eigen::RowVectorXd c1 = m.c * v;
    Eigen::MatrixXd w = krylov_basis(a1.transpose(), c1.transpose(), tol);
    r.unobservable_dim = r.controllable_dim - static_cast<int>(w.cols());
    r.a_min = w.transpose() * a1 * w;
    r.b_min = w.transpose() * b1;
    r.c_min = c1 * w;
    r.transform_q = v * w;
    r.order = static_cast<int>(w.cols());
    return r;
}

MinimalRealization kalman_minimal(const StateSpaceModel &model, const Binding &binding, double tol) {
    return kalman_minimal(evaluate(model, binding), tol);
}

std::string diagnostics_report(const StateSpaceModel &model, const Binding &binding) {
    std::ostringstream out;
    auto cr = controllability_rank(model, binding);
    auto orank = observability_rank(model, binding);
    auto mr = kalman_minimal(model, binding);
    auto pbh = pbh_test(model, binding, 0.0);
    out << "dim " << model.dim << "\n";
    out << "controllability_rank " << cr.rank << (cr.exact ? " exact" : " svd") << "\n";
    out << "observability_rank " << orank.rank << (orank.exact ? " exact" : " svd") << "\n";
    out << "minimal_order " << mr.order << "\n";
    out << "pbh_zero " << (pbh.deficient ? "deficient" : "full") << "\n";
    return out.str();
}

}  // namespace qsensor
