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

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qsensor {

/// Seeded stream that can be split into independent named children, so every consumer of
/// randomness derives from one root seed.
class Rng {
   public:
    explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {
    }
    Rng split(std::string_view name) const;
    Rng split(uint64_t index) const;

    uint64_t seed() const {
        return seed_;
    }
    std::mt19937_64 &engine() {
        return engine_;
    }
    double uniform(double lo, double hi);
    double normal();
    int uniform_int(int lo, int hi);
    bool coin();

    /// Values uniform in [-2,-0.25] U [0.25,2].
    std::vector<double> binding(int n);
    /// Exact rationals p/q of the same magnitude range, small denominators.
    std::vector<mpq_class> rational_binding(int n);

   private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t x);

}  // namespace qsensor
