/*
 * Copyright 2026 The mcmimo Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.

*/

#ifndef MCMIMO_RNG_HPP
#define MCMIMO_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "mcmimo/numerics.hpp"

namespace mcmimo {

/// Mixes a sequence of integers into one stream index (order sensitive).
std::uint64_t stream_id(std::initializer_list<std::uint64_t> parts);

/**
 * Reproducible random stream keyed by (master_seed, stream_index).
 *
 * Seeding is a pure function of the key, so a Monte-Carlo trial draws the same
 * samples no matter which worker runs it or in which order. Gaussian samples
 * come from our own Box-Muller transform rather than std::normal_distribution,
 * whose algorithm is implementation defined.
 */
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on (0, 1].
    double uniform();
    double standard_normal();
    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    cd complex_gaussian(double variance);
    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// n i.i.d. CN(0, variance) samples. Negative variance is an argument error.
ComplexVector gaussian_noise(std::size_t n, double variance, RngStream& rng);

}  // namespace mcmimo

#endif  // MCMIMO_RNG_HPP
