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

#include "qsensor/rng.hpp"

namespace qsensor {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng Rng::split(std::string_view name) const {
    // FNV-1a over the name, mixed with the parent seed.
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : name) {
        h = (h ^ c) * 0x100000001B3ULL;
    }
    return Rng(splitmix64(seed_ ^ splitmix64(h)));
}

Rng Rng::split(uint64_t index) const {
    return Rng(splitmix64(seed_ + splitmix64(index + 0x5851F42D4C957F2DULL)));
}

double Rng::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

int Rng::uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

bool Rng::coin() {
    return (engine_() >> 63) != 0;
}

std::vector<double> Rng::binding(int n) {
    std::vector<double> out(n);
    for (auto &v : out) {
        v = uniform(0.25, 2.0);
        if (coin()) {
            v = -v;
        }
    }
    return out;
}

std::vector<mpq_class> Rng::rational_binding(int n) {
    std::vector<mpq_class> out(n);
    for (auto &v : out) {
        int den = uniform_int(1, 12);
        int num = uniform_int((den + 3) / 4, 2 * den);
        v = mpq_class(coin() ? -num : num, den);
        v.canonicalize();
    }
    return out;
}

}  // namespace qsensor
