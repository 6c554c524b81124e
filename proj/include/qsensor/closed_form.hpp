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

#include <vector>

#include "qsensor/exact.hpp"

namespace qsensor {

// Closed forms for the g1 chain model. Bindings are ordered (ha, hb, h1, ..., h_{N-1}).

/// h_a^{N+1} h_b^N prod_{k=3}^{N+1} (-1)^k prod_{i=1}^{k-2} h_i.
Rational cm_det_closed_form(int n_chain, const std::vector<Rational> &h);

/// Odd N only. Last column of the observability block: (0, ..., 0, h_b prod h_i).
std::vector<Rational> p_vec_closed_form(int n_chain, const std::vector<Rational> &h);
Rational p_bar_det_closed_form(int n_chain, const std::vector<Rational> &h);
Rational k_const_closed_form(int n_chain, const std::vector<Rational> &h);
/// Last column of the inverse observability block.
std::vector<Rational> p_bar_inv_last_column_closed_form(int n_chain, const std::vector<Rational> &h);
/// Last column of the reduced A. Rows are 1-based in the formulas; the last odd row is k = N.
std::vector<Rational> a_tilde_last_column_closed_form(int n_chain, const std::vector<Rational> &h);

}  // namespace qsensor
