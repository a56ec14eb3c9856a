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

#include "mcmimo/linear_waveforms.hpp"

#include <stdexcept>

namespace mcmimo {

FdBlocks ofdm_modulate(const FrameGrid& g) {
    FdBlocks s(g.k, g.m);
    for (std::size_t m = 0; m < g.m; ++m)
        for (std::size_t k = 0; k < g.k; ++k) s.blocks[m][k] = g.at(m, k);
    return s;
}

FdBlocks scfdma_modulate(const FrameGrid& g, const SubcarrierMap& map) {
    if (map.k() != g.k) throw std::invalid_argument("scfdma_modulate: subcarrier map size mismatch");
    const auto& act = map.active();
    FdBlocks s(g.k, g.m);
    ComplexVector tmp(act.size());
    for (std::size_t m = 0; m < g.m; ++m) {
        for (std::size_t j = 0; j < act.size(); ++j) tmp[j] = g.at(m, act[j]);
        dft_inplace(tmp);
        for (std::size_t j = 0; j < act.size(); ++j) s.blocks[m][act[j]] = tmp[j];
    }
    return s;
}

SymbolEstimate ofdm_demodulate(const UserEstimate& eq) {
    SymbolEstimate out;
    out.k = eq.s_hat.k;
    out.m = eq.s_hat.count();
    out.symbols.resize(out.k * out.m);
    out.npi.resize(out.k * out.m);
    for (std::size_t m = 0; m < out.m; ++m) {
        for (std::size_t k = 0; k < out.k; ++k) {
            out.symbols[m * out.k + k] = eq.s_hat.blocks[m][k];
            out.npi[m * out.k + k] = eq.npi[m][k];
        }
    }
    return out;
}

SymbolEstimate scfdma_demodulate(const UserEstimate& eq, const SubcarrierMap& map) {
    if (map.k() != eq.s_hat.k) throw std::invalid_argument("scfdma_demodulate: subcarrier map size mismatch");
    const auto& act = map.active();
    SymbolEstimate out;
    out.k = eq.s_hat.k;
    out.m = eq.s_hat.count();
    out.symbols.assign(out.k * out.m, cd{0.0, 0.0});
    out.npi.assign(out.k * out.m, 0.0);
    const std::vector<double> v2 = aggregate_td_npi(eq, act);
    ComplexVector tmp(act.size());
    for (std::size_t m = 0; m < out.m; ++m) {
        for (std::size_t j = 0; j < act.size(); ++j) tmp[j] = eq.s_hat.blocks[m][act[j]];
        idft_inplace(tmp);
        for (std::size_t j = 0; j < act.size(); ++j) {
            out.symbols[m * out.k + act[j]] = tmp[j];
            out.npi[m * out.k + act[j]] = v2[m];
        }
    }
    return out;
}

}  // namespace mcmimo
