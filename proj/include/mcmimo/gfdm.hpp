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

#ifndef MCMIMO_GFDM_HPP
#define MCMIMO_GFDM_HPP

#include <cstddef>
#include <cmath>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "mcmimo/frame.hpp"

namespace mcmimo {

/// Polyphase spectrum of a prototype has a (near) zero bin, so ZF inversion is impossible.
class SingularPrototypeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Real GFDM prototype of length M*K.
 *
 * Polyphase component k is g_k[m] = g[k + m K]. The RRC design normalizes
 * ||g||^2 = K, which gives the modulator unit output power for unit-power data.
 */
struct GfdmPrototype {
    std::size_t k = 0;
    std::size_t m = 0;
    double rolloff = 0.0;
    std::vector<double> g;

    /// Arbitrary taps, used as given (no normalization, no invertibility check).
    static GfdmPrototype from_taps(std::size_t k, std::size_t m, std::vector<double> taps);

    ComplexVector polyphase(std::size_t ki) const;
};

/// Raised-cosine square root pulse with symbol period `period`, evaluated at time t.
double rrc_pulse(double t, double period, double rolloff);

/**
 * RRC of length M*K, symbol period K, sampled at t = n - (MK - 1)/2 so that
 * g[n] = g[MK - 1 - n]. Throws SingularPrototypeError if any polyphase
 * spectrum has a bin below 1e-12 in magnitude.
 */
GfdmPrototype rrc_prototype(std::size_t k, std::size_t m, double rolloff);

/**
 * Modulator: dbar_k[m] = IDFT_K(d_m)[k], x_k = g_k (*) dbar_k, x[k + mK] = x_k[m].
 * Relative to the direct form sum_{k,m} d_{m,k} g[(n - mK) mod MK] e^{j 2 pi k n / K}
 * the output is scaled by gfdm_direct_form_scale(K).
 */
ComplexVector gfdm_modulate(const FrameGrid& grid, const GfdmPrototype& p);
inline double gfdm_direct_form_scale(std::size_t k) { return 1.0 / std::sqrt(static_cast<double>(k)); }

/// Per-subcarrier ZF filters with circ_conv(inverse[k], g_k) = delta.
struct GfdmZfFilter {
    std::size_t k = 0;
    std::size_t m = 0;
    std::vector<ComplexVector> inverse;
};

/// Throws SingularPrototypeError on a polyphase bin below 1e-12.
GfdmZfFilter gfdm_zf_filter(const GfdmPrototype& p);

/// e_k = inverse_k (*) xhat_k, then d_hat_m = DFT_K over k of e_k[m].
ComplexVector gfdm_zf_demodulate(std::span<const cd> x_hat, const GfdmZfFilter& f);

/**
 * Offline noise constants of a ZF filter set.
 *
 * literal = (1/KM) sum_k sum_m |inverse_k[m]|^2. White noise of variance v^2 at
 * the receiver input leaves each detected symbol with variance
 * v^2 (1/K) sum_k ||inverse_k||^2 = calibration * literal * v^2, calibration = M.
 */
struct GfdmNpiConstants {
    std::vector<double> energy;  // sum_m |inverse_k[m]|^2 per subcarrier
    double literal = 0.0;
    double calibration = 1.0;
};

GfdmNpiConstants gfdm_npi_constants(const GfdmZfFilter& f);
double gfdm_npi(double v2, const GfdmNpiConstants& c);

/// CSV "index,value".
void write_taps_csv(std::ostream& os, const std::vector<double>& taps);

}  // namespace mcmimo

#endif  // MCMIMO_GFDM_HPP
