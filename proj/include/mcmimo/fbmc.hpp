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

#ifndef MCMIMO_FBMC_HPP
#define MCMIMO_FBMC_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mcmimo/frame.hpp"

namespace mcmimo {

constexpr std::size_t kPhydyasOverlap = 4;

/// Real prototype of length L = 4K; polyphase branch k holds p[k + lK], l = 0..3.
struct PhydyasPrototype {
    std::size_t k = 0;
    std::size_t l = 0;
    std::vector<double> p;

    /// Arbitrary taps of length 4K, used as given.
    static PhydyasPrototype from_taps(std::size_t k, std::vector<double> taps);

    double energy() const;
    /// Receiver gain 1 / ||p||^2 (unit loopback).
    double gain() const { return 1.0 / energy(); }
};

/**
 * p[n] = H0 + 2 sum_{l=1..3} (-1)^l H_l cos(2 pi l (n + 1/2) / L), n = 0..L-1,
 * with H = (1, 0.971960, 1/sqrt(2), 0.235147), scaled to ||p||^2 = 1/2
 * (unit transmit power for unit-energy PAM). Requires even K >= 4.
 */
PhydyasPrototype phydyas_prototype(std::size_t k);

/// beta_{m,k} = exp(-j 2 pi k (L-1) / (2K)) j^{m+k}.
cd fbmc_phase(std::size_t m, std::size_t k, std::size_t K, std::size_t L);

/// (M_pam - 1) K / 2 + L.
std::size_t fbmc_length(std::size_t k, std::size_t m_pam, std::size_t l);

/**
 * x[n] = sum_{m,k} d_{m,k} beta_{m,k} p[n - mK/2] e^{j 2 pi k n / K}, computed
 * per subsymbol with one K-point IDFT and the polyphase filter. The grid holds
 * M_pam rows of real symbols; a non-zero imaginary part is an argument error.
 */
ComplexVector fbmc_modulate(const FrameGrid& grid, const PhydyasPrototype& p);

struct FbmcDemodOutput {
    std::size_t k = 0;
    std::size_t m = 0;
    /// gain * conj(beta) * polyphase/DFT output; its imaginary part is the intrinsic interference.
    ComplexVector statistic;
    std::vector<double> symbols;  // real part
};

/// Polyphase network, K-point DFT, phase removal, real part. Uses the first N_td samples.
FbmcDemodOutput fbmc_demodulate(std::span<const cd> x_hat, const PhydyasPrototype& p, std::size_t m_pam);

/// One nonzero of the receive matrix P (row m*K + k, column = time sample).
struct SparseEntry {
    std::size_t row;
    std::size_t col;
    double value;
};

/**
 * Receive filtering as a matrix: the noise on branch k of subsymbol m is
 * sum_n P[mK + k][n] w[n] before a unitary K-point DFT. Scaled so that the
 * post-DFT noise variance is v^2 (1/K) sum_k q_{k + mK}.
 */
std::vector<SparseEntry> fbmc_p_entries(const PhydyasPrototype& p, std::size_t m_pam);

/// Main diagonal of P P^H computed directly from the taps: q_{mK+k} = K gain^2 sum_l p[k+lK]^2.
std::vector<double> build_p_diag(const PhydyasPrototype& p, std::size_t m_pam);

struct FbmcNpiConstants {
    std::size_t k = 0;
    std::vector<double> q;
    std::vector<double> subsymbol_mean;  // (1/K) sum_k q_{k + mK}
};

FbmcNpiConstants fbmc_npi_constants(const PhydyasPrototype& p, std::size_t m_pam);

/**
 * v2_hat_m = v2 (1/K) sum_k q_{k+mK}: the complex-statistic noise variance.
 * The real part that is demapped carries half of it.
 */
std::vector<double> fbmc_npi(double v2, const FbmcNpiConstants& c);

}  // namespace mcmimo

#endif  // MCMIMO_FBMC_HPP
