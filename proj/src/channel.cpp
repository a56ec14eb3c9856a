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

#include "mcmimo/channel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace mcmimo {

ChannelModel channel_model_from_name(const std::string& name) {
    if (name == "iid-rayleigh") return ChannelModel::iid_rayleigh;
    if (name == "tapped-delay-line") return ChannelModel::tapped_delay_line;
    if (name == "identity") return ChannelModel::identity;
    throw std::invalid_argument("unknown channel model '" + name + "'");
}

std::string channel_model_name(ChannelModel m) {
    switch (m) {
        case ChannelModel::iid_rayleigh: return "iid-rayleigh";
        case ChannelModel::tapped_delay_line: return "tapped-delay-line";
        case ChannelModel::identity: return "identity";
    }
    return "?";
}

Coherence coherence_from_name(const std::string& name) {
    if (name == "per-frame") return Coherence::per_frame;
    if (name == "per-block") return Coherence::per_block;
    throw std::invalid_argument("unknown coherence '" + name + "'");
}

std::string coherence_name(Coherence c) {
    return c == Coherence::per_frame ? "per-frame" : "per-block";
}

ChannelRealization generate_channel(std::size_t b, std::size_t u, std::size_t k,
                                    std::size_t blocks, const ChannelSpec& spec, RngStream& rng) {
    if (u == 0 || b < u || k == 0 || blocks == 0) {
        throw std::invalid_argument("generate_channel: need B >= U >= 1, K >= 1, blocks >= 1 (B=" +
                                    std::to_string(b) + ", U=" + std::to_string(u) + ")");
    }
    ChannelRealization ch;
    ch.b = b;
    ch.u = u;
    ch.k = k;
    ch.blocks = blocks;
    ch.spec = spec;
    const std::size_t nc = ch.coherence_blocks();
    const std::size_t bu = b * u;
    ch.h.assign(nc * k * bu, cd{0.0, 0.0});

    switch (spec.model) {
        case ChannelModel::identity:
            if (b != u) throw std::invalid_argument("generate_channel: identity model needs B == U");
            for (std::size_t c = 0; c < nc; ++c)
                for (std::size_t ki = 0; ki < k; ++ki)
                    for (std::size_t i = 0; i < u; ++i) ch.h[(c * k + ki) * bu + i * u + i] = 1.0;
            break;
        case ChannelModel::iid_rayleigh:
            for (auto& v : ch.h) v = rng.complex_gaussian(1.0);
            break;
        case ChannelModel::tapped_delay_line: {
            if (spec.taps == 0 || !(spec.decay_taps > 0.0)) {
                throw std::invalid_argument("generate_channel: tapped-delay-line needs taps >= 1, decay > 0");
            }
            std::vector<double> power(spec.taps);
            double total = 0.0;
            for (std::size_t l = 0; l < spec.taps; ++l) {
                power[l] = std::exp(-static_cast<double>(l) / spec.decay_taps);
                total += power[l];
            }
            for (auto& p : power) p /= total;

            ComplexVector taps(spec.taps);
            for (std::size_t c = 0; c < nc; ++c) {
                for (std::size_t e = 0; e < bu; ++e) {
                    for (std::size_t l = 0; l < spec.taps; ++l) taps[l] = rng.complex_gaussian(power[l]);
                    for (std::size_t ki = 0; ki < k; ++ki) {
                        cd acc{0.0, 0.0};
                        for (std::size_t l = 0; l < spec.taps; ++l) {
                            const double ph = -2.0 * kPi * static_cast<double>((ki * l) % k) /
                                              static_cast<double>(k);
                            acc += taps[l] * cd{std::cos(ph), std::sin(ph)};
                        }
                        ch.h[(c * k + ki) * bu + e] = acc;
                    }
                }
            }
            break;
        }
    }
    return ch;
}

ReceivedFrame apply_channel(const std::vector<FdBlocks>& users, const ChannelRealization& h,
                            double n0, RngStream& rng) {
    if (users.size() != h.u) {
        throw std::invalid_argument("apply_channel: " + std::to_string(users.size()) +
                                    " users for a channel with U=" + std::to_string(h.u));
    }
    if (!(n0 >= 0.0)) throw std::invalid_argument("apply_channel: N0 must be >= 0");
    for (const auto& s : users) {
        if (s.k != h.k || s.count() != h.blocks) {
            throw std::invalid_argument("apply_channel: user blocks do not match channel dimensions");
        }
    }
    ReceivedFrame r;
    r.b = h.b;
    r.k = h.k;
    r.blocks = h.blocks;
    r.n0 = n0;
    r.y.assign(h.blocks * h.k * h.b, cd{0.0, 0.0});
    for (std::size_t m = 0; m < h.blocks; ++m) {
        for (std::size_t ki = 0; ki < h.k; ++ki) {
            const cd* hm = h.matrix(ki, m);
            cd* y = r.y.data() + (m * h.k + ki) * h.b;
            for (std::size_t i = 0; i < h.b; ++i) {
                cd acc{0.0, 0.0};
                for (std::size_t j = 0; j < h.u; ++j) acc += hm[i * h.u + j] * users[j].blocks[m][ki];
                y[i] = acc;
            }
        }
    }
    if (n0 > 0.0) {
        for (auto& v : r.y) v += rng.complex_gaussian(n0);
    }
    return r;
}

void write_channel_csv(std::ostream& os, const ChannelRealization& h) {
    os << "k,m,i,j,re,im\n";
    char buf[96];
    for (std::size_t c = 0; c < h.coherence_blocks(); ++c) {
        for (std::size_t ki = 0; ki < h.k; ++ki) {
            const cd* hm = h.h.data() + (c * h.k + ki) * h.b * h.u;
            for (std::size_t i = 0; i < h.b; ++i) {
                for (std::size_t j = 0; j < h.u; ++j) {
                    const cd v = hm[i * h.u + j];
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
                    os << ki << ',' << c << ',' << i << ',' << j << ',' << buf << '\n';
                }
            }
        }
    }
}

}  // namespace mcmimo
