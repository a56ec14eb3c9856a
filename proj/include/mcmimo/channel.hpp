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

#ifndef MCMIMO_CHANNEL_HPP
#define MCMIMO_CHANNEL_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcmimo/frame.hpp"
#include "mcmimo/rng.hpp"

namespace mcmimo {

enum class ChannelModel { iid_rayleigh, tapped_delay_line, identity };
enum class Coherence { per_frame, per_block };

ChannelModel channel_model_from_name(const std::string& name);
std::string channel_model_name(ChannelModel m);
Coherence coherence_from_name(const std::string& name);
std::string coherence_name(Coherence c);

struct ChannelSpec {
    ChannelModel model = ChannelModel::iid_rayleigh;
    Coherence coherence = Coherence::per_frame;
    std::size_t taps = 4;        // tapped-delay-line length
    double decay_taps = 1.0;     // power profile exp(-l / decay_taps)
};

/**
 * Flat-fading gain per (subcarrier, block): a B x U matrix, row-major.
 *
 * With per-frame coherence only one realization per subcarrier is stored and
 * every block maps onto it.
 */
struct ChannelRealization {
    std::size_t b = 0;
    std::size_t u = 0;
    std::size_t k = 0;
    std::size_t blocks = 0;
    ChannelSpec spec;
    std::vector<cd> h;

    std::size_t coherence_blocks() const {
        return spec.coherence == Coherence::per_frame ? 1 : blocks;
    }
    std::size_t coherence_index(std::size_t m) const {
        return spec.coherence == Coherence::per_frame ? 0 : m;
    }
    const cd* matrix(std::size_t ki, std::size_t m) const {
        return h.data() + (coherence_index(m) * k + ki) * b * u;
    }
    cd* matrix(std::size_t ki, std::size_t m) {
        return h.data() + (coherence_index(m) * k + ki) * b * u;
    }
};

/// Identity model requires B == U (H = I on every subcarrier).
ChannelRealization generate_channel(std::size_t b, std::size_t u, std::size_t k,
                                    std::size_t blocks, const ChannelSpec& spec, RngStream& rng);

/// y[(m * K + k) * B + i], plus the noise variance used.
struct ReceivedFrame {
    std::size_t b = 0;
    std::size_t k = 0;
    std::size_t blocks = 0;
    double n0 = 0.0;
    std::vector<cd> y;

    const cd* at(std::size_t ki, std::size_t m) const { return y.data() + (m * k + ki) * b; }
};

/// y_{k,m} = H_{k,m} s_{k,m} + n_{k,m}, n ~ CN(0, n0 I).
ReceivedFrame apply_channel(const std::vector<FdBlocks>& users, const ChannelRealization& h,
                            double n0, RngStream& rng);

/// CSV rows k,m,i,j,re,im for every stored coherence block.
void write_channel_csv(std::ostream& os, const ChannelRealization& h);

}  // namespace mcmimo

#endif  // MCMIMO_CHANNEL_HPP
