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

#include "qsensor/estimate.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsensor/realization.hpp"
#include "qsensor/rng.hpp"
#include "qsensor/symca.hpp"

namespace qsensor {

using cd = std::complex<double>;

namespace {

struct Spectral {
    Eigen::VectorXd energies;
    Eigen::MatrixXcd weights;
};

Spectral spectral_data(const HamiltonianSpec &h, const Binding &binding, const InitialState &s,
                       const PauliString &m) {
    int nq = h.n_qubits();
    if (nq > kMaxDenseQubits) {
        throw Error(ErrorCode::SizeCap, "exact simulation limited to " + std::to_string(kMaxDenseQubits) +
                                            " qubits, got " + std::to_string(nq));
    }
    if (static_cast<int>(binding.size()) != h.n_params()) {
        throw Error(ErrorCode::Unbound, "binding size does not match the Hamiltonian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian(h, binding));
    const Eigen::MatrixXd &v = es.eigenvectors();
    Eigen::MatrixXcd mm = v.transpose().cast<cd>() * dense_matrix(m) * v.cast<cd>();
    Eigen::MatrixXd rho = v.transpose() * dense_density(s, nq) * v;
    Spectral out;
    out.energies = es.eigenvalues();
    out.weights = mm.cwiseProduct(rho.transpose().cast<cd>());
    return out;
}

}  // namespace

std::vector<double> exact_quantum_expectation(const HamiltonianSpec &h, const Binding &binding,
                                              const InitialState &s, const PauliString &m,
                                              const std::vector<double> &times) {
    Spectral sp = spectral_data(h, binding, s, m);
    int d = static_cast<int>(sp.energies.size());
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXcd phase(d);
        for (int j = 0; j < d; j++) {
            phase(j) = std::exp(cd(0, sp.energies(j) * t));
        }
        // sum_jk W_jk e^{i(E_j - E_k)t}
        cd acc = phase.transpose() * sp.weights * phase.conjugate();
        out.push_back(acc.real());
    }
    return out;
}

double exact_quantum_expectation(const HamiltonianSpec &h, const Binding &binding, const InitialState &s,
                                 const PauliString &m, double t) {
    return exact_quantum_expectation(h, binding, s, m, std::vector<double>{t})[0];
}

MeasurementRecord simulate_record(const StateSpaceModel &model, const Binding &binding, double dt, int count,
                                  double noise_sigma, uint64_t seed) {
    if (!(dt > 0) || count < 1) {
        throw Error(ErrorCode::InvalidArgument, "need dt > 0 and count >= 1");
    }
    if (!(noise_sigma >= 0)) {
        throw Error(ErrorCode::InvalidArgument, "noise sigma must be nonnegative");
    }
    double bound = gershgorin_bound(model, binding);
    if (dt * bound >= kBranchMargin) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "dt=%.6g too large: spectral bound %.6g needs dt < %.6g", dt, bound,
                      kBranchMargin / bound);
        throw Error(ErrorCode::InvalidArgument, buf);
    }
    MeasurementRecord r;
    r.dt = dt;
    r.noise_sigma = noise_sigma;
    r.seed = seed;
    r.scheme = model.basis.scheme_tag;
    for (int k = 0; k < count; k++) {
        r.times.push_back(k * dt);
    }
    r.values = impulse_response(model, binding, r.times);
    if (noise_sigma > 0) {
        Rng rng = Rng(seed).split("noise");
        for (double &y : r.values) {
            y += noise_sigma * rng.normal();
        }
    }
    return r;
}

std::string record_to_csv(const MeasurementRecord &r) {
    std::string out = "t,y,sigma,seed,scheme\n";
    char buf[128];
    for (size_t k = 0; k < r.times.size(); k++) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", r.times[k], r.values[k], r.noise_sigma);
        out += buf;
        out += std::to_string(r.seed) + "," + r.scheme + "\n";
    }
    return out;
}

namespace {

double parse_double(const std::string &s, int line, const char *what) {
    size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw Error(ErrorCode::Parse, "row " + std::to_string(line) + ": bad " + what + " '" + s + "'");
    }
    return v;
}

}  // namespace

MeasurementRecord record_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "t,y,sigma,seed,scheme") {
        throw Error(ErrorCode::Parse, "row 1: expected header t,y,sigma,seed,scheme");
    }
    MeasurementRecord r;
    int lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 5) {
            throw Error(ErrorCode::Parse,
                        "row " + std::to_string(lineno) + ": expected 5 fields, got " + std::to_string(f.size()));
        }
        double t = parse_double(f[0], lineno, "time");
        double y = parse_double(f[1], lineno, "value");
        double sigma = parse_double(f[2], lineno, "sigma");
        uint64_t seed;
        try {
            size_t used = 0;
            seed = std::stoull(f[3], &used);
            if (used != f[3].size()) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception &) {
            throw Error(ErrorCode::Parse, "row " + std::to_string(lineno) + ": bad seed '" + f[3] + "'");
        }
        if (r.times.empty()) {
            r.noise_sigma = sigma;
            r.seed = seed;
            r.scheme = f[4];
        } else if (sigma != r.noise_sigma || seed != r.seed || f[4] != r.scheme) {
            throw Error(ErrorCode::Parse, "row " + std::to_string(lineno) + ": sigma/seed/scheme differ from row 2");
        }
        if (!r.times.empty() && !(t > r.times.back())) {
            throw Error(ErrorCode::Parse, "row " + std::to_string(lineno) + ": times must increase");
        }
        r.times.push_back(t);
        r.values.push_back(y);
    }
    if (r.times.size() < 2) {
        throw Error(ErrorCode::Parse, "record needs at least two samples");
    }
    r.dt = r.times[1] - r.times[0];
    for (size_t k = 1; k < r.times.size(); k++) {
        double step = r.times[k] - r.times[k - 1];
        if (std::abs(step - r.dt) > 1e-9 * r.dt) {
            throw Error(ErrorCode::Parse, "row " + std::to_string(k + 2) + ": sampling is not uniform");
        }
    }
    return r;
}

void write_record(const MeasurementRecord &r, const std::string &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    }
    f << record_to_csv(r);
}

MeasurementRecord read_record(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return record_from_csv(ss.str());
}

EraRealization era(const MeasurementRecord &r, int order_cap) {
    int count = static_cast<int>(r.values.size());
    if (count < 4) {
        throw Error(ErrorCode::InvalidArgument, "record too short for a Hankel realization");
    }
    EraRealization e;
    e.hankel_rows = count / 2;
    e.hankel_cols = count - e.hankel_rows - 1;
    Eigen::MatrixXd h0(e.hankel_rows, e.hankel_cols), h1(e.hankel_rows, e.hankel_cols);
    for (int i = 0; i < e.hankel_rows; i++) {
        for (int j = 0; j < e.hankel_cols; j++) {
            h0(i, j) = r.values[i + j];
            h1(i, j) = r.values[i + j + 1];
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(h0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sv = svd.singularValues();
    int len = static_cast<int>(sv.size());
    e.singular_values.assign(sv.data(), sv.data() + len);

    int data_order = 0;
    if (len > 0 && sv(0) > 0) {
        if (r.noise_sigma > 0) {
            double floor = 10 * r.noise_sigma * std::sqrt(static_cast<double>(e.hankel_rows));
            while (data_order < len && sv(data_order) > floor) {
                data_order++;
            }
        } else {
            double best = 1e-6;
            int at = -1;
            // gaps inside the rounding floor do not count
            for (int i = 0; i + 1 < len && sv(i) > 1e-11 * sv(0); i++) {
                double ratio = sv(i) > 0 ? sv(i + 1) / sv(i) : 1.0;
                if (ratio < best) {
                    best = ratio;
                    at = i;
                }
            }
            if (at < 0) {
                e.order_ambiguous = true;
                data_order = len;
            } else {
                data_order = at + 1;
            }
        }
    }
    e.data_order = data_order;
    e.order = order_cap > 0 ? std::min(order_cap, data_order) : data_order;
    int n = e.order;
    if (n == 0) {
        e.a_hat = e.a_cont = Eigen::MatrixXd(0, 0);
        e.b_hat = Eigen::VectorXd(0);
        e.c_hat = Eigen::RowVectorXd(0);
        return e;
    }
    Eigen::VectorXd s = sv.head(n);
    Eigen::VectorXd s_half = s.cwiseSqrt();
    Eigen::VectorXd s_inv_half = s_half.cwiseInverse();
    Eigen::MatrixXd un = svd.matrixU().leftCols(n);
    Eigen::MatrixXd vn = svd.matrixV().leftCols(n);
    e.a_hat = s_inv_half.asDiagonal() * (un.transpose() * h1 * vn) * s_inv_half.asDiagonal();
    e.b_hat = s_half.asDiagonal() * vn.row(0).transpose();
    e.c_hat = un.row(0) * s_half.asDiagonal();

    // Principal logarithm through the eigendecomposition.
    Eigen::EigenSolver<Eigen::MatrixXd> es(e.a_hat);
    Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::VectorXcd lg = es.eigenvalues().unaryExpr([](const cd &z) { return std::log(z); });
    Eigen::MatrixXcd logm = v * lg.asDiagonal() * v.inverse();
    e.a_cont = logm.real() / r.dt;
    return e;
}

std::vector<double> era_markov(const EraRealization &e, int count) {
    std::vector<double> out;
    Eigen::VectorXd v = e.b_hat;
    for (int k = 0; k < count; k++) {
        out.push_back(e.order ? e.c_hat.dot(v) : 0.0);
        if (e.order) {
            v = e.a_hat * v;
        }
    }
    return out;
}

std::vector<double> lanczos_offdiagonal(const std::vector<double> &nodes, const std::vector<double> &weights,
                                        int steps) {
    int n = static_cast<int>(nodes.size());
    if (static_cast<int>(weights.size()) != n || steps >= n) {
        throw Error(ErrorCode::DimensionMismatch, "Lanczos needs more nodes than steps");
    }
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    if (!(total > 0)) {
        throw Error(ErrorCode::Numeric, "spectral weights do not sum to a positive mass");
    }
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(nodes.data(), n);
    Eigen::MatrixXd q(n, steps + 1);
    for (int i = 0; i < n; i++) {
        q(i, 0) = std::sqrt(weights[i] / total);
    }
    std::vector<double> beta;
    for (int k = 0; k < steps; k++) {
        Eigen::VectorXd v = x.cwiseProduct(q.col(k));
        // two passes of full reorthogonalization
        for (int pass = 0; pass < 2; pass++) {
            for (int j = 0; j <= k; j++) {
                v -= q.col(j).dot(v) * q.col(j);
            }
        }
        double b = v.norm();
        if (b == 0) {
            throw Error(ErrorCode::Numeric, "Lanczos breakdown at step " + std::to_string(k));
        }
        beta.push_back(b);
        q.col(k + 1) = v / b;
    }
    return beta;
}

namespace {

int structural_order(const StateSpaceModel &model) {
    Rng rng = Rng(0x5eed).split("structural-order");
    return kalman_minimal(model, rng.binding(model.n_params())).order;
}

Recovery recover_chain(const MeasurementRecord &r, const StateSpaceModel &model, int n_chain) {
    Recovery out;
    out.method = "lanczos";
    out.era = era(r, structural_order(model));
    const EraRealization &e = out.era;
    if (e.order == 0) {
        throw Error(ErrorCode::Numeric, "record carries no signal");
    }
    double m1 = e.c_hat * e.a_cont * e.b_hat;
    Eigen::EigenSolver<Eigen::MatrixXd> es(e.a_cont);
    Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::MatrixXcd vinv = v.inverse();
    Eigen::RowVectorXcd cv = e.c_hat.cast<cd>() * v;
    Eigen::VectorXcd vb = vinv * e.b_hat.cast<cd>();
    std::vector<double> nodes, weights;
    double mass = 0;
    double scale = e.a_cont.norm();
    for (int j = 0; j < e.order; j++) {
        cd lam = es.eigenvalues()(j);
        if (std::abs(lam) <= 1e-12 * scale) {
            continue;
        }
        cd w = -m1 * cv(j) * vb(j) / lam;
        nodes.push_back(lam.imag());
        weights.push_back(std::max(w.real(), 0.0));
        mass += w.real();
    }
    if (n_chain % 2 == 1) {
        // Odd chains carry a dark zero mode; it holds the rest of the Xa weight.
        nodes.push_back(0.0);
        weights.push_back(std::max(1.0 - mass, 0.0));
    }
    out.invariants = weights;
    int steps = model.n_params();
    if (static_cast<int>(nodes.size()) <= steps) {
        throw Error(ErrorCode::Numeric, "realized order " + std::to_string(nodes.size()) + " too small for " +
                                            std::to_string(steps) + " couplings");
    }
    out.magnitudes = lanczos_offdiagonal(nodes, weights, steps);
    out.names = model.params();
    char buf[96];
    std::snprintf(buf, sizeof buf, "first Markov parameter %.12g, spectral mass %.12g", m1, mass);
    out.note = buf;
    return out;
}

Recovery recover_markov(const MeasurementRecord &r, const StateSpaceModel &model) {
    Recovery out;
    out.method = "markov-groebner";
    out.era = era(r, structural_order(model));
    const EraRealization &e = out.era;
    if (e.order == 0) {
        throw Error(ErrorCode::Numeric, "record carries no signal");
    }
    RingPtr theta = theta_ring(model, MonomialOrder::Lex);
    int np = model.n_params();
    std::vector<QPoly> symbolic = symbolic_markov(model, 2 * np);
    std::vector<QPoly> eqs;
    Eigen::VectorXd x = e.b_hat;
    for (int k = 1; k < 2 * np; k++) {
        x = e.a_cont * x;
        if (k % 2 == 0) {
            continue;
        }
        double vk = e.c_hat.dot(x);
        out.invariants.push_back(vk);
        eqs.push_back(substitute_theta(symbolic[k], theta) - QPoly::constant(theta, Rational(vk)));
    }
    SolveResult sol = solve_identifiability(eqs, squared_flags(theta));
    if (sol.verdict != SolveVerdict::Unique) {
        throw Error(ErrorCode::Numeric, std::string("Markov system is ") + solve_verdict_name(sol.verdict) +
                                            (sol.note.empty() ? "" : ": " + sol.note));
    }
    const auto &t = sol.solutions[0];
    out.magnitudes.push_back(std::abs(t[0]));
    for (int i = 1; i < np; i++) {
        out.magnitudes.push_back(std::sqrt(std::max(t[i], 0.0)));
    }
    out.names = model.params();
    return out;
}

}  // namespace

Recovery recover_parameters(const MeasurementRecord &r, const std::string &scheme, int n_chain) {
    const SchemeInfo &info = scheme_info(scheme);
    if (info.sensor_qubits == 1) {
        throw Error(ErrorCode::Unidentifiable,
                    "single-qubit sensor: the initial state is orthogonal to the accessible set, output is zero");
    }
    if (scheme != "g1" && scheme != "g2") {
        throw Error(ErrorCode::Unidentifiable,
                    "scheme " + scheme + ": every admissible initial state is orthogonal to the accessible set");
    }
    if (!r.scheme.empty() && r.scheme != scheme) {
        throw Error(ErrorCode::InvalidArgument, "record was taken with scheme " + r.scheme);
    }
    StateSpaceModel model = build_scheme(scheme, n_chain);
    if (scheme == "g1") {
        return recover_chain(r, model, n_chain);
    }
    if (n_chain != 2) {
        throw Error(ErrorCode::InvalidArgument, "Markov recovery for g2 is implemented for N = 2 only");
    }
    return recover_markov(r, model);
}

}  // namespace qsensor
