// SPDX-License-Identifier: Apache-2.0
//
// treescatter - path loss modelling for single-tree mmWave scattering links
// Copyright (C) 2025-2026 the treescatter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TREESCATTER_RNG_HPP
#define TREESCATTER_RNG_HPP

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace treescatter {

// Deterministic noise generation, algorithm version 1.
//
// Streams are MT19937-64 (whose raw output the C++ standard pins down
// bit-exactly) with all value mappings implemented here, because the
// std::*_distribution adaptors are implementation-defined. Uniform doubles
// take the top 53 bits of one engine draw; Gaussians come from one
// Box-Muller pair per two values. Identical seeds therefore reproduce
// identical streams everywhere, up to libm rounding of sin/cos/log/sqrt.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Sub-seed for an independent per-stream engine, keyed by a double-valued
// stream label (the reception angle). Keying by value rather than position
// keeps a stream stable when other streams are added or reordered.
inline std::uint64_t substream_seed(std::uint64_t seed, double stream_key) {
    std::uint64_t state = seed ^ std::bit_cast<std::uint64_t>(stream_key);
    splitmix64(state);
    return splitmix64(state);
}

class NoiseRng {
  public:
    explicit NoiseRng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the second value of each pair is
    // cached and returned on the next call.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        // Guard against log(0).
        double r = std::sqrt(-2.0 * std::log1p(u1 - 1.0 + 0x1.0p-53));
        double phi = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    // Circularly symmetric complex Gaussian with total power sigma2
    // (variance sigma2/2 per component); always consumes exactly one
    // Box-Muller pair, independent of the scalar cache.
    std::complex<double> complex_gaussian(double sigma2) {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-sigma2 * std::log1p(u1 - 1.0 + 0x1.0p-53));
        double phi = 2.0 * 3.141592653589793238462643383279502884 * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace treescatter

#endif
