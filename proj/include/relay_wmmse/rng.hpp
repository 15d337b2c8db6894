// SPDX-License-Identifier: Apache-2.0
//
// relay-wmmse: joint transmit and relay precoding for relay-aided mmWave downlink
// Copyright (C) 2026 The relay-wmmse authors
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

#ifndef RELAY_WMMSE_RNG_HPP
#define RELAY_WMMSE_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace relay_wmmse {

using rng_engine = std::mt19937_64;

// Independent substreams carved out of one root seed.
enum class stream : std::uint64_t {
    channel = 1,
    init = 2,
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Mixes a root seed with a sequence of stream coordinates.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t s = splitmix64(root);
    for (auto p : path)
        s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    return s;
}

// Generator for one trial. The stream does not depend on any grid value, so
// every point of a sweep sees the same random draws for a given trial.
inline rng_engine trial_rng(std::uint64_t root, stream which, std::uint64_t trial)
{
    return rng_engine(derive_seed(root, {static_cast<std::uint64_t>(which), trial}));
}

// Always consumes exactly one draw, also for a degenerate range.
inline double uniform(rng_engine& rng, double lo, double hi)
{
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return lo + u * (hi - lo);
}

// Circularly symmetric complex Gaussian with unit variance.
inline std::complex<double> complex_normal(rng_engine& rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

} // namespace relay_wmmse

#endif
