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

#include "mcmimo/frame.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mcmimo {

SubcarrierMap::SubcarrierMap(std::size_t k, std::size_t k_active) : k_(k), mask_(k, 0) {
    if (k == 0 || k_active == 0 || k_active > k) {
        throw std::invalid_argument("SubcarrierMap: need 0 < k_active <= K (K=" + std::to_string(k) +
                                    ", k_active=" + std::to_string(k_active) + ")");
    }
    if (k_active != k && k_active % 2 != 0) {
        throw std::invalid_argument("SubcarrierMap: k_active must be even when smaller than K");
    }
    active_.resize(k_active);
    for (std::size_t j = 0; j < k_active; ++j) {
        active_[j] = (k_active == k || j < k_active / 2) ? j : k - k_active + j;
        mask_[active_[j]] = 1;
    }
}

FrameGrid random_grid(std::size_t m, const Constellation& c, const SubcarrierMap& map,
                      RngStream& rng) {
    FrameGrid g(map.k(), m);
    const std::size_t bps = c.bits_per_symbol();
    const std::size_t n_sym = m * map.k_active();
    g.labels.resize(n_sym);
    g.source_bits.resize(n_sym * bps);
    std::size_t s = 0;
    for (std::size_t mi = 0; mi < m; ++mi) {
        for (std::size_t bin : map.active()) {
            std::size_t label = 0;
            for (std::size_t j = 0; j < bps; ++j) {
                const std::uint8_t b = rng.bit();
                g.source_bits[s * bps + j] = b;
                label = (label << 1) | b;
            }
            g.labels[s++] = label;
            g.at(mi, bin) = c.points()[label];
        }
    }
    return g;
}

FdBlocks td_to_blocks(std::span<const cd> x, std::size_t k) {
    if (k == 0) throw std::invalid_argument("td_to_blocks: K must be positive");
    const std::size_t count = (x.size() + k - 1) / k;
    FdBlocks out(k, count);
    for (std::size_t b = 0; b < count; ++b) {
        ComplexVector& blk = out.blocks[b];
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t n = b * k + i;
            blk[i] = n < x.size() ? x[n] : cd{0.0, 0.0};
        }
        dft_inplace(blk);
    }
    return out;
}

ComplexVector blocks_to_td(const FdBlocks& blocks) {
    ComplexVector x(blocks.count() * blocks.k);
    for (std::size_t b = 0; b < blocks.count(); ++b) {
        ComplexVector tmp = idft(blocks.blocks[b]);
        std::copy(tmp.begin(), tmp.end(), x.begin() + static_cast<std::ptrdiff_t>(b * blocks.k));
    }
    return x;
}

}  // namespace mcmimo
