// SPDX-License-Identifier: Apache-2.0
//
// relaysim — spectral-efficiency engine for multipair two-way massive-MIMO relaying
// Copyright (C) 2026 relaysim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace relaysim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Per-trial random stream derived from (seed, stream index). Streams are
/// independent of execution order, so trials can run in parallel and still
/// reproduce bit-identically. The uniform/normal transforms avoid
/// std::*_distribution on purpose: mt19937_64 plus the explicit mappings
/// below are fully specified, std::normal_distribution is not.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream)
        : gen_(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x9E3779B97F4A7C15ULL + 1))) {}

    /// Uniform in (0, 1), never exactly 0 or 1.
    double uniform() { return (double(gen_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double phi = 6.283185307179586476925286766559 * uniform();
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    /// Circularly symmetric complex Gaussian CN(0, variance): independent
    /// real/imaginary parts with variance/2 each.
    std::complex<double> cgaussian(double variance) {
        const double s = std::sqrt(variance * 0.5);
        return {s * normal(), s * normal()};
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace relaysim
