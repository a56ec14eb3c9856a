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

#include "mcmimo/fbmc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcmimo {

namespace {

constexpr double kPhydyasH[kPhydyasOverlap] = {1.0, 0.971960, 0.70710678118654752440, 0.235147};

// j^e
cd j_power(std::size_t e) {
    switch (e % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

PhydyasPrototype PhydyasPrototype::from_taps(std::size_t k, std::vector<double> taps) {
    if (k == 0 || taps.size() != kPhydyasOverlap * k) {
        throw std::invalid_argument("PhydyasPrototype: expected " + std::to_string(kPhydyasOverlap * k) + " taps");
    }
    PhydyasPrototype p;
    p.k = k;
    p.l = kPhydyasOverlap * k;
    p.p = std::move(taps);
    return p;
}

double PhydyasPrototype::energy() const {
    double e = 0.0;
    for (double v : p) e += v * v;
    if (!(e > 0.0)) throw std::invalid_argument("PhydyasPrototype: all-zero taps");
    return e;
}

PhydyasPrototype phydyas_prototype(std::size_t k) {
    if (k < 4 || k % 2 != 0) {
        throw std::invalid_argument("phydyas_prototype: K must be even and >= 4 (K=" + std::to_string(k) + ")");
    }
    const std::size_t L = kPhydyasOverlap * k;
    std::vector<double> taps(L);
    double energy = 0.0;
    for (std::size_t n = 0; n < L; ++n) {
        double v = kPhydyasH[0];
        for (std::size_t l = 1; l < kPhydyasOverlap; ++l) {
            const double sign = (l % 2 == 0) ? 1.0 : -1.0;
            v += 2.0 * sign * kPhydyasH[l] *
                 std::cos(2.0 * kPi * static_cast<double>(l) * (static_cast<double>(n) + 0.5) / static_cast<double>(L));
        }
        taps[n] = v;
        energy += v * v;
    }
    const double s = std::sqrt(0.5 / energy);
    for (auto& v : taps) v *= s;
    return PhydyasPrototype::from_taps(k, std::move(taps));
}

cd fbmc_phase(std::size_t m, std::size_t k, std::size_t K, std::size_t L) {
    // exp(-j pi r / K) with r = k (L-1) mod 2K
    const std::size_t r = (k * (L - 1)) % (2 * K);
    const double ph = -kPi * static_cast<double>(r) / static_cast<double>(K);
    return cd{std::cos(ph), std::sin(ph)} * j_power(m + k);
}

std::size_t fbmc_length(std::size_t k, std::size_t m_pam, std::size_t l) {
    if (m_pam == 0) throw std::invalid_argument("fbmc_length: M_pam must be >= 1");
    return (m_pam - 1) * k / 2 + l;
}

ComplexVector fbmc_modulate(const FrameGrid& grid, const PhydyasPrototype& p) {
    const std::size_t K = p.k, L = p.l;
    if (grid.k != K) throw std::invalid_argument("fbmc_modulate: grid has K=" + std::to_string(grid.k));
    ComplexVector x(fbmc_length(K, grid.m, L), cd{0.0, 0.0});
    const double sk = std::sqrt(static_cast<double>(K));
    ComplexVector v(K);
    for (std::size_t m = 0; m < grid.m; ++m) {
        for (std::size_t k = 0; k < K; ++k) {
            const cd d = grid.at(m, k);
            if (d.imag() != 0.0) {
                throw std::invalid_argument("fbmc_modulate: symbol (" + std::to_string(m) + "," + std::to_string(k) +
                                            ") is not real");
            }
            const double sign = ((k * m) % 2 == 0) ? 1.0 : -1.0;
            v[k] = d.real() * sign * fbmc_phase(m, k, K, L);
        }
        idft_inplace(v);
        const std::size_t off = m * K / 2;
        for (std::size_t n = 0; n < L; ++n) x[off + n] += p.p[n] * sk * v[n % K];
    }
    return x;
}

FbmcDemodOutput fbmc_demodulate(std::span<const cd> x_hat, const PhydyasPrototype& p, std::size_t m_pam) {
    const std::size_t K = p.k, L = p.l;
    const std::size_t n_td = fbmc_length(K, m_pam, L);
    if (x_hat.size() < n_td) {
        throw std::invalid_argument("fbmc_demodulate: need " + std::to_string(n_td) + " samples, got " +
                                    std::to_string(x_hat.size()));
    }
    FbmcDemodOutput out;
    out.k = K;
    out.m = m_pam;
    out.statistic.resize(K * m_pam);
    out.symbols.resize(K * m_pam);
    const double scale = p.gain() * std::sqrt(static_cast<double>(K));
    ComplexVector z(K);
    for (std::size_t m = 0; m < m_pam; ++m) {
        const std::size_t off = m * K / 2;
        for (std::size_t k = 0; k < K; ++k) {
            cd acc{0.0, 0.0};
            for (std::size_t l = 0; l < kPhydyasOverlap; ++l) acc += p.p[k + l * K] * x_hat[off + k + l * K];
            z[k] = acc;
        }
        dft_inplace(z);
        for (std::size_t k = 0; k < K; ++k) {
            const double sign = ((k * m) % 2 == 0) ? 1.0 : -1.0;
            const cd s = scale * sign * std::conj(fbmc_phase(m, k, K, L)) * z[k];
            out.statistic[m * K + k] = s;
            out.symbols[m * K + k] = s.real();
        }
    }
    return out;
}

std::vector<SparseEntry> fbmc_p_entries(const PhydyasPrototype& p, std::size_t m_pam) {
    const std::size_t K = p.k;
    const double scale = std::sqrt(static_cast<double>(K)) * p.gain();
    std::vector<SparseEntry> e;
    e.reserve(m_pam * p.l);
    for (std::size_t m = 0; m < m_pam; ++m) {
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = 0; l < kPhydyasOverlap; ++l) {
                e.push_back({m * K + k, m * K / 2 + k + l * K, scale * p.p[k + l * K]});
            }
        }
    }
    return e;
}

std::vector<double> build_p_diag(const PhydyasPrototype& p, std::size_t m_pam) {
    const std::size_t K = p.k;
    const double g = p.gain();
    std::vector<double> q(K * m_pam);
    for (std::size_t k = 0; k < K; ++k) {
        double acc = 0.0;
        for (std::size_t l = 0; l < kPhydyasOverlap; ++l) acc += p.p[k + l * K] * p.p[k + l * K];
        const double qk = static_cast<double>(K) * g * g * acc;
        for (std::size_t m = 0; m < m_pam; ++m) q[m * K + k] = qk;
    }
    return q;
}

FbmcNpiConstants fbmc_npi_constants(const PhydyasPrototype& p, std::size_t m_pam) {
    FbmcNpiConstants c;
    c.k = p.k;
    c.q = build_p_diag(p, m_pam);
    c.subsymbol_mean.assign(m_pam, 0.0);
    for (std::size_t m = 0; m < m_pam; ++m) {
        double acc = 0.0;
        for (std::size_t k = 0; k < p.k; ++k) acc += c.q[m * p.k + k];
        c.subsymbol_mean[m] = acc / static_cast<double>(p.k);
    }
    return c;
}

std::vector<double> fbmc_npi(double v2, const FbmcNpiConstants& c) {
    std::vector<double> out(c.subsymbol_mean.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = v2 * c.subsymbol_mean[m];
    return out;
}

}  // namespace mcmimo
