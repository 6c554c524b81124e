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

#include <string>
#include <vector>

#include <gmpxx.h>
#include <Eigen/Dense>

namespace qsensor {

using Rational = mpq_class;

/// Dense row-major matrix of exact rationals.
class QMatrix {
   public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    }
    static QMatrix identity(int n);
    static QMatrix from_double(const Eigen::MatrixXd &m);

    int rows() const {
        return rows_;
    }
    int cols() const {
        return cols_;
    }
    Rational &operator()(int r, int c) {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }
    const Rational &operator()(int r, int c) const {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }

    QMatrix operator*(const QMatrix &o) const;
    QMatrix operator+(const QMatrix &o) const;
    QMatrix operator-(const QMatrix &o) const;
    QMatrix transpose() const;
    QMatrix block(int r0, int c0, int nr, int nc) const;
    QMatrix row(int r) const {
        return block(r, 0, 1, cols_);
    }
    QMatrix col(int c) const {
        return block(0, c, rows_, 1);
    }
    bool operator==(const QMatrix &o) const;
    bool is_zero() const;

    Eigen::MatrixXd to_double() const;
    std::string str() const;

   private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form; returns pivot columns.
std::vector<int> rref(QMatrix &m);
int exact_rank(QMatrix m);
Rational exact_det(QMatrix m);
/// Throws Singular when m is not invertible.
QMatrix exact_inverse(const QMatrix &m);
/// Columns span the right null space.
QMatrix exact_nullspace(const QMatrix &m);
/// Some x with m x = rhs, or nothing when the system is inconsistent.
bool exact_solve(const QMatrix &m, const QMatrix &rhs, QMatrix *x);

}  // namespace qsensor
