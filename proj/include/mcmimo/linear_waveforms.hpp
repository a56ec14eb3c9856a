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

#ifndef MCMIMO_LINEAR_WAVEFORMS_HPP
#define MCMIMO_LINEAR_WAVEFORMS_HPP

#include <vector>

#include "mcmimo/equalizer.hpp"
#include "mcmimo/frame.hpp"

namespace mcmimo {

/// Demodulated K x M grid ([m * K + k]) with the noise variance seen by each symbol.
struct SymbolEstimate {
    std::size_t k = 0;
    std::size_t m = 0;
    ComplexVector symbols;
    /// E|n|^2 of the complex error on each entry (the demapper's npi argument).
    std::vector<double> npi;
};

/// s_m = d_m.
FdBlocks ofdm_modulate(const FrameGrid& g);
/// The active entries of d_m are spread by a K_active-point DFT onto the active subcarriers.
FdBlocks scfdma_modulate(const FrameGrid& g, const SubcarrierMap& map);

/// d_hat_m = s_hat_m; each symbol keeps its own subcarrier's variance.
SymbolEstimate ofdm_demodulate(const UserEstimate& eq);
/// Inverse spreading; every symbol of block m gets the mean variance over the active subcarriers.
SymbolEstimate scfdma_demodulate(const UserEstimate& eq, const SubcarrierMap& map);

}  // namespace mcmimo

#endif  // MCMIMO_LINEAR_WAVEFORMS_HPP
