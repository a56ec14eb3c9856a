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

#ifndef MCMIMO_FRAME_HPP
#define MCMIMO_FRAME_HPP

#include <cstddef>
#include <vector>

#include "mcmimo/constellation.hpp"
#include "mcmimo/rng.hpp"

namespace mcmimo {

/**
 * Which of the K subcarriers carry data.
 *
 * The active band is centred on DC: the first K_active/2 bins and the last
 * K_active/2 bins of the K-point spectrum. With K_active = K every bin is
 * active and active_index(j) = j.
 */
class SubcarrierMap {
public:
    SubcarrierMap(std::size_t k, std::size_t k_active);
    static SubcarrierMap full(std::size_t k) { return SubcarrierMap(k, k); }

    std::size_t k() const { return k_; }
    std::size_t k_active() const { return active_.size(); }
    const std::vector<std::size_t>& active() const { return active_; }
    bool is_active(std::size_t bin) const { return mask_[bin] != 0; }

private:
    std::size_t k_;
    std::vector<std::size_t> active_;
    std::vector<std::uint8_t> mask_;
};

/// K x M symbol grid; symbols[m * K + k] is d_{m,k}. Inactive subcarriers hold zero.
struct FrameGrid {
    std::size_t k = 0;
    std::size_t m = 0;
    ComplexVector symbols;
    /// Point index of each active entry, in (m, active j) order.
    std::vector<std::size_t> labels;
    BitVector source_bits;

    FrameGrid() = default;
    FrameGrid(std::size_t k_, std::size_t m_) : k(k_), m(m_), symbols(k_ * m_) {}

    cd& at(std::size_t mi, std::size_t ki) { return symbols[mi * k + ki]; }
    cd at(std::size_t mi, std::size_t ki) const { return symbols[mi * k + ki]; }
};

/// Random bits mapped onto the active entries of a K x M grid.
FrameGrid random_grid(std::size_t m, const Constellation& c, const SubcarrierMap& map,
                      RngStream& rng);

/// Per-user sequence of K-point frequency-domain blocks, blocks[m][k].
struct FdBlocks {
    std::size_t k = 0;
    std::vector<ComplexVector> blocks;

    FdBlocks() = default;
    FdBlocks(std::size_t k_, std::size_t count) : k(k_), blocks(count, ComplexVector(k_)) {}
    std::size_t count() const { return blocks.size(); }
};

/// Zero-pads x to a multiple of K and takes the unitary K-point DFT of each piece.
FdBlocks td_to_blocks(std::span<const cd> x, std::size_t k);
/// Inverse of td_to_blocks (without removing the padding).
ComplexVector blocks_to_td(const FdBlocks& blocks);

}  // namespace mcmimo

#endif  // MCMIMO_FRAME_HPP
