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

#include "mcmimo/equalizer.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace mcmimo {

RankDeficiencyError::RankDeficiencyError(std::size_t k, std::size_t m)
    : NumericalError("rank-deficient channel Gram matrix at subcarrier " + std::to_string(k) +
                     ", block " + std::to_string(m)),
      k_(k),
      m_(m) {}

EqualizedFrame mmse_equalize(const ReceivedFrame& y, const ChannelRealization& h, double n0) {
    if (y.b != h.b || y.k != h.k || y.blocks != h.blocks) {
        throw std::invalid_argument("mmse_equalize: received frame does not match channel");
    }
    if (!(n0 >= 0.0)) throw std::invalid_argument("mmse_equalize: N0 must be >= 0");
    const std::size_t B = h.b, U = h.u, K = h.k;

    EqualizedFrame out;
    out.users.resize(U);
    for (auto& e : out.users) {
        e.s_hat = FdBlocks(K, h.blocks);
        e.npi.assign(h.blocks, std::vector<double>(K, 0.0));
    }

    ComplexVector mf(U), raw(U);
    std::vector<double> mu(U), var(U);
    for (std::size_t c = 0; c < h.coherence_blocks(); ++c) {
        // blocks that share this realization
        const std::size_t m_begin = h.spec.coherence == Coherence::per_frame ? 0 : c;
        const std::size_t m_end = h.spec.coherence == Coherence::per_frame ? h.blocks : c + 1;
        for (std::size_t k = 0; k < K; ++k) {
            const cd* hm = h.matrix(k, m_begin);
            const auto a = HermitianMatrix::regularized_gram({hm, B * U}, B, U, n0);
            std::optional<CholeskyFactor> chol;
            try {
                chol.emplace(a);
            } catch (const SingularMatrixError&) {
                throw RankDeficiencyError(k, m_begin);
            }
            const std::vector<double> inv_diag = chol->inverse_diagonal();
            for (std::size_t u = 0; u < U; ++u) {
                mu[u] = 1.0 - n0 * inv_diag[u];
                if (!(mu[u] > 0.0)) throw RankDeficiencyError(k, m_begin);
                var[u] = (1.0 - mu[u]) / mu[u];
            }
            for (std::size_t m = m_begin; m < m_end; ++m) {
                const cd* ym = y.at(k, m);
                for (std::size_t u = 0; u < U; ++u) {
                    cd acc{0.0, 0.0};
                    for (std::size_t b = 0; b < B; ++b) acc += std::conj(hm[b * U + u]) * ym[b];
                    mf[u] = acc;
                }
                chol->solve_into(mf, raw);
                for (std::size_t u = 0; u < U; ++u) {
                    out.users[u].s_hat.blocks[m][k] = raw[u] / mu[u];
                    out.users[u].npi[m][k] = var[u];
                }
            }
        }
    }
    return out;
}

std::vector<double> aggregate_td_npi(const UserEstimate& est, const std::vector<std::size_t>& bins) {
    if (bins.empty()) throw std::invalid_argument("aggregate_td_npi: empty subcarrier set");
    std::vector<double> v(est.npi.size(), 0.0);
    for (std::size_t m = 0; m < est.npi.size(); ++m) {
        double acc = 0.0;
        for (std::size_t k : bins) acc += est.npi[m].at(k);
        v[m] = acc / static_cast<double>(bins.size());
    }
    return v;
}

double frame_td_npi(const UserEstimate& est) {
    double acc = 0.0;
    std::size_t n = 0;
    for (const auto& row : est.npi) {
        for (double x : row) acc += x;
        n += row.size();
    }
    if (n == 0) throw std::invalid_argument("frame_td_npi: empty estimate");
    return acc / static_cast<double>(n);
}

}  // namespace mcmimo
