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

#include "qsensor/ssm.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace qsensor {

namespace {

constexpr int kDenseExpmLimit = 200;

void check_binding(const StateSpaceModel &model, size_t n) {
    if (static_cast<int>(n) != model.n_params()) {
        throw Error(ErrorCode::Unbound, "model has " + std::to_string(model.n_params()) + " parameters, binding has " +
                                            std::to_string(n));
    }
}

}  // namespace

StateSpaceModel build(const HamiltonianSpec &h, const AccessibleSet &g, const InitialState &s, const PauliString &m) {
    if (g.find(m) < 0) {
        throw Error(ErrorCode::InvalidArgument, "measurement " + render(m, h.layout) + " is not in the basis");
    }
    if ((s.prepared_x & ~h.layout.sensor_mask()) != 0) {
        throw Error(ErrorCode::Inadmissible, "only sensor qubits can be prepared");
    }
    StateSpaceModel model;
    model.dim = g.size();
    model.basis = g;
    model.hamiltonian = h;
    model.initial = s;
    model.measurement = m;
    model.b.assign(model.dim, Rational(0));
    model.c.assign(model.dim, Rational(0));
    std::map<std::tuple<int, int, int>, Rational> entries;
    for (int i = 0; i < model.dim; i++) {
        const PauliString &o = g.basis[i];
        for (const auto &t : heisenberg_derivative(h, o)) {
            int j = g.find(t.string);
            if (j < 0) {
                throw Error(ErrorCode::NotClosed, render(t.string, h.layout) + " is outside the basis");
            }
            entries[{i, j, t.param}] += t.coeff * g.basis[j].sign();
        }
        model.b[i] = expectation(o, s);
        if (o.same_letters(m)) {
            model.c[i] = o.sign() * m.sign();
        }
    }
    for (auto &[key, coeff] : entries) {
        if (coeff != 0) {
            auto [i, j, p] = key;
            model.a_entries.push_back({i, j, p, coeff});
        }
    }
    return model;
}

StateSpaceModel build_scheme(const std::string &scheme, int n_chain, const std::string &initial) {
    const auto &info = scheme_info(scheme);
    std::string init = initial.empty() ? info.admissible_initial.front() : initial;
    if (!is_admissible(scheme, init)) {
        throw Error(ErrorCode::Inadmissible, "initial state " + init + " is not admissible for scheme " + scheme);
    }
    HamiltonianSpec h = HamiltonianSpec::exchange(n_chain, info.sensor_qubits);
    PauliString m = parse_pauli(info.measurement, h.layout);
    AccessibleSet g = generate(h, m, scheme);
    return build(h, g, InitialState::from_label(init, h.layout), m);
}

NumericModel evaluate(const StateSpaceModel &model, const Binding &binding) {
    check_binding(model, binding.size());
    NumericModel out;
    out.a = Eigen::MatrixXd::Zero(model.dim, model.dim);
    out.b.resize(model.dim);
    out.c.resize(model.dim);
    for (const auto &e : model.a_entries) {
        out.a(e.row, e.col) += e.coeff.get_d() * binding[e.param];
    }
    for (int i = 0; i < model.dim; i++) {
        out.b(i) = model.b[i].get_d();
        out.c(i) = model.c[i].get_d();
    }
    return out;
}

ExactModel evaluate_exact(const StateSpaceModel &model, const ExactBinding &binding) {
    check_binding(model, binding.size());
    ExactModel out{QMatrix(model.dim, model.dim), QMatrix(model.dim, 1), QMatrix(1, model.dim)};
    for (const auto &e : model.a_entries) {
        out.a(e.row, e.col) += e.coeff * binding[e.param];
    }
    for (int i = 0; i < model.dim; i++) {
        out.b(i, 0) = model.b[i];
        out.c(0, i) = model.c[i];
    }
    return out;
}

std::vector<double> impulse_response(const NumericModel &m, const std::vector<double> &times) {
    std::vector<double> y(times.size(), 0.0);
    for (double t : times) {
        if (!(t >= 0)) {
            throw Error(ErrorCode::InvalidArgument, "impulse response needs t >= 0");
        }
    }
    if (m.b.isZero(0) || m.c.isZero(0)) {
        return y;
    }
    int n = m.dim();
    if (n <= kDenseExpmLimit) {
        for (size_t k = 0; k < times.size(); k++) {
            Eigen::MatrixXd e = (m.a * times[k]).exp();
            y[k] = m.c * e * m.b;
        }
        return y;
    }
    // iA is hermitian for antisymmetric A: exp(At) = V exp(-i L t) V^H.
    Eigen::MatrixXcd ia = std::complex<double>(0, 1) * m.a.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ia);
    Eigen::VectorXcd vb = es.eigenvectors().adjoint() * m.b.cast<std::complex<double>>();
    Eigen::RowVectorXcd cv = m.c.cast<std::complex<double>>() * es.eigenvectors();
    for (size_t k = 0; k < times.size(); k++) {
        std::complex<double> acc = 0;
        for (int j = 0; j < n; j++) {
            acc += cv(j) * std::exp(std::complex<double>(0, -es.eigenvalues()(j) * times[k])) * vb(j);
        }
        y[k] = acc.real();
    }
    return y;
}

std::vector<double> impulse_response(const StateSpaceModel &model, const Binding &binding,
                                     const std::vector<double> &times) {
    return impulse_response(evaluate(model, binding), times);
}

std::vector<double> markov_parameters(const NumericModel &m, int k) {
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "need at least one markov parameter");
    }
    std::vector<double> out;
    Eigen::VectorXd v = m.b;
    for (int i = 0; i < k; i++) {
        out.push_back(m.c.dot(v));
        v = m.a * v;
    }
    return out;
}

std::vector<double> markov_parameters(const StateSpaceModel &model, const Binding &binding, int k) {
    return markov_parameters(evaluate(model, binding), k);
}

double gershgorin_bound(const StateSpaceModel &model, const Binding &binding) {
    check_binding(model, binding.size());
    std::vector<double> row(model.dim, 0.0);
    for (const auto &e : model.a_entries) {
        row[e.row] += std::abs(e.coeff.get_d() * binding[e.param]);
    }
    double best = 0;
    for (double r : row) {
        best = std::max(best, r);
    }
    return best;
}

std::string dump(const StateSpaceModel &model) {
    std::ostringstream out;
    out << "dim " << model.dim << "\n";
    out << "params";
    for (const auto &p : model.params()) {
        out << " " << p;
    }
    out << "\n";
    for (const auto &e : model.a_entries) {
        out << "A " << e.row << " " << e.col << " ";
        if (e.coeff == 1) {
            out << "+";
        } else if (e.coeff == -1) {
            out << "-";
        } else {
            out << e.coeff << "*";
        }
        out << model.params()[e.param] << "\n";
    }
    auto vec = [&](const char *name, const std::vector<Rational> &v) {
        out << name;
        for (const auto &x : v) {
            out << " " << x;
        }
        out << "\n";
    };
    vec("B", model.b);
    vec("C", model.c);
    for (int i = 0; i < model.dim; i++) {
        out << "basis " << i << " " << render(model.basis.basis[i], model.basis.layout) << "\n";
    }
    return out.str();
}

Binding binding_from_names(const StateSpaceModel &model, const std::vector<std::pair<std::string, double>> &values) {
    Binding out(model.n_params(), 0.0);
    std::vector<bool> set(model.n_params(), false);
    for (const auto &[name, v] : values) {
        int i = model.hamiltonian.param_index(name);
        out[i] = v;
        set[i] = true;
    }
    for (int i = 0; i < model.n_params(); i++) {
        if (!set[i]) {
            throw Error(ErrorCode::Unbound, "no value for " + model.params()[i]);
        }
    }
    return out;
}

}  // namespace qsensor
