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

#include "qsensor/exact.hpp"

#include <sstream>

#include "qsensor/error.hpp"

namespace qsensor {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; i++) {
        m(i, i) = 1;
    }
    return m;
}

QMatrix QMatrix::from_double(const Eigen::MatrixXd &m) {
    QMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int r = 0; r < out.rows(); r++) {
        for (int c = 0; c < out.cols(); c++) {
            // Exact: every double is a dyadic rational.
            out(r, c) = Rational(m(r, c));
        }
    }
    return out;
}

QMatrix QMatrix::operator*(const QMatrix &o) const {
    if (cols_ != o.rows_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product");
    }
    QMatrix out(rows_, o.cols_);
    for (int r = 0; r < rows_; r++) {
        for (int k = 0; k < cols_; k++) {
            const Rational &a = (*this)(r, k);
            if (a == 0) {
                continue;
            }
            for (int c = 0; c < o.cols_; c++) {
                if (o(k, c) != 0) {
                    out(r, c) += a * o(k, c);
                }
            }
        }
    }
    return out;
}

QMatrix QMatrix::operator+(const QMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix sum");
    }
    QMatrix out = *this;
    for (size_t i = 0; i < data_.size(); i++) {
        out.data_[i] += o.data_[i];
    }
    return out;
}

QMatrix QMatrix::operator-(const QMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix difference");
    }
    QMatrix out = *this;
    for (size_t i = 0; i < data_.size(); i++) {
        out.data_[i] -= o.data_[i];
    }
    return out;
}

QMatrix QMatrix::transpose() const {
    QMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; r++) {
        for (int c = 0; c < cols_; c++) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

QMatrix QMatrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) {
        throw Error(ErrorCode::DimensionMismatch, "block out of range");
    }
    QMatrix out(nr, nc);
    for (int r = 0; r < nr; r++) {
        for (int c = 0; c < nc; c++) {
            out(r, c) = (*this)(r0 + r, c0 + c);
        }
    }
    return out;
}

bool QMatrix::operator==(const QMatrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool QMatrix::is_zero() const {
    for (const auto &v : data_) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

Eigen::MatrixXd QMatrix::to_double() const {
    Eigen::MatrixXd out(rows_, cols_);
    for (int r = 0; r < rows_; r++) {
        for (int c = 0; c < cols_; c++) {
            out(r, c) = (*this)(r, c).get_d();
        }
    }
    return out;
}

std::string QMatrix::str() const {
    std::ostringstream out;
    for (int r = 0; r < rows_; r++) {
        for (int c = 0; c < cols_; c++) {
            out << (c ? " " : "") << (*this)(r, c);
        }
        out << "\n";
    }
    return out.str();
}

std::vector<int> rref(QMatrix &m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); col++) {
        int p = -1;
        for (int r = row; r < m.rows(); r++) {
            if (m(r, col) != 0) {
                p = r;
                break;
            }
        }
        if (p < 0) {
            continue;
        }
        if (p != row) {
            for (int c = 0; c < m.cols(); c++) {
                std::swap(m(p, c), m(row, c));
            }
        }
        Rational inv = 1 / m(row, col);
        for (int c = col; c < m.cols(); c++) {
            m(row, c) *= inv;
        }
        for (int r = 0; r < m.rows(); r++) {
            if (r == row || m(r, col) == 0) {
                continue;
            }
            Rational f = m(r, col);
            for (int c = col; c < m.cols(); c++) {
                if (m(row, c) != 0) {
                    m(r, c) -= f * m(row, c);
                }
            }
        }
        pivots.push_back(col);
        row++;
    }
    return pivots;
}

int exact_rank(QMatrix m) {
    // Forward elimination only; cheaper than a full rref.
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); col++) {
        int p = -1;
        for (int r = rank; r < m.rows(); r++) {
            if (m(r, col) != 0) {
                p = r;
                break;
            }
        }
        if (p < 0) {
            continue;
        }
        if (p != rank) {
            for (int c = 0; c < m.cols(); c++) {
                std::swap(m(p, c), m(rank, c));
            }
        }
        for (int r = rank + 1; r < m.rows(); r++) {
            if (m(r, col) == 0) {
                continue;
            }
            Rational f = m(r, col) / m(rank, col);
            for (int c = col; c < m.cols(); c++) {
                if (m(rank, c) != 0) {
                    m(r, c) -= f * m(rank, c);
                }
            }
        }
        rank++;
    }
    return rank;
}

Rational exact_det(QMatrix m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    }
    int n = m.rows();
    Rational det = 1;
    for (int col = 0; col < n; col++) {
        int p = -1;
        for (int r = col; r < n; r++) {
            if (m(r, col) != 0) {
                p = r;
                break;
            }
        }
        if (p < 0) {
            return 0;
        }
        if (p != col) {
            for (int c = 0; c < n; c++) {
                std::swap(m(p, c), m(col, c));
            }
            det = -det;
        }
        det *= m(col, col);
        for (int r = col + 1; r < n; r++) {
            if (m(r, col) == 0) {
                continue;
            }
            Rational f = m(r, col) / m(col, col);
            for (int c = col; c < n; c++) {
                if (m(col, c) != 0) {
                    m(r, c) -= f * m(col, c);
                }
            }
        }
    }
    return det;
}

QMatrix exact_inverse(const QMatrix &m) {
    int n = m.rows();
    if (n != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    }
    QMatrix aug(n, 2 * n);
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < n; c++) {
            aug(r, c) = m(r, c);
        }
        aug(r, n + r) = 1;
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) {
        throw Error(ErrorCode::Singular, "matrix is not invertible");
    }
    return aug.block(0, n, n, n);
}

QMatrix exact_nullspace(const QMatrix &m) {
    QMatrix r = m;
    auto piv = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : piv) {
        is_pivot[p] = true;
    }
    int nfree = m.cols() - static_cast<int>(piv.size());
    QMatrix out(m.cols(), nfree);
    int k = 0;
    for (int f = 0; f < m.cols(); f++) {
        if (is_pivot[f]) {
            continue;
        }
        out(f, k) = 1;
        for (size_t i = 0; i < piv.size(); i++) {
            out(piv[i], k) = -r(static_cast<int>(i), f);
        }
        k++;
    }
    return out;
}

bool exact_solve(const QMatrix &m, const QMatrix &rhs, QMatrix *x) {
    if (rhs.rows() != m.rows() || rhs.cols() != 1) {
        throw Error(ErrorCode::DimensionMismatch, "right-hand side shape");
    }
    QMatrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); r++) {
        for (int c = 0; c < m.cols(); c++) {
            aug(r, c) = m(r, c);
        }
        aug(r, m.cols()) = rhs(r, 0);
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols()) {
        return false;
    }
    if (x) {
        *x = QMatrix(m.cols(), 1);
        for (size_t i = 0; i < piv.size(); i++) {
            (*x)(piv[i], 0) = aug(static_cast<int>(i), m.cols());
        }
    }
    return true;
}

}  // namespace qsensor
