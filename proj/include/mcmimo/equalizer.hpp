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

#ifndef MCMIMO_EQUALIZER_HPP
#define MCMIMO_EQUALIZER_HPP

#include <cstddef>
#include <vector>

#include "mcmimo/channel.hpp"
#include "mcmimo/frame.hpp"

namespace mcmimo {

/// A = H^H H + N0 I could not be factored; carries the offending (k, m).
class RankDeficiencyError : public NumericalError {
public:
    RankDeficiencyError(std::size_t k, std::size_t m);
    std::size_t subcarrier() const { return k_; }
    std::size_t block() const { return m_; }

private:
    std::size_t k_;
    std::size_t m_;
};

/// One user's equalizer output: unbiased estimates and their error variance, both [m][k].
struct UserEstimate {
    FdBlocks s_hat;
    std::vector<std::vector<double>> npi;
};

struct EqualizedFrame {
    std::vector<UserEstimate> users;
};

/**
 * Unbiased linear MMSE detection per subcarrier and block.
 *
 * raw = A^{-1} H^H y with A = H^H H + N0 I; mu_u = (A^{-1} G)_uu = 1 - N0 (A^{-1})_uu;
 * s_hat_u = raw_u / mu_u and its error variance (1 - mu_u) / mu_u. A is factored
 * once per subcarrier and coherence block and reused for every block sharing it.
 */
EqualizedFrame mmse_equalize(const ReceivedFrame& y, const ChannelRealization& h, double n0);

/// Mean over `bins` of the per-subcarrier variance, for each block.
std::vector<double> aggregate_td_npi(const UserEstimate& est, const std::vector<std::size_t>& bins);
/// Mean over every (k, m) entry.
double frame_td_npi(const UserEstimate& est);

}  // namespace mcmimo

#endif  // MCMIMO_EQUALIZER_HPP
