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

#include "mcmimo/gfdm.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace mcmimo {

namespace {

constexpr double kSingularBin = 1e-12;

void check_dims(std::size_t k, std::size_t m) {
    if (k < 2 || m < 2) {
        throw std::invalid_argument("GFDM needs K >= 2 and M >= 2 (K=" + std::to_string(k) +
                                    ", M=" + std::to_string(m) + ")");
    }
}

}  // namespace

GfdmPrototype GfdmPrototype::from_taps(std::size_t k, std::size_t m, std::vector<double> taps) {
    if (k == 0 || m == 0 || taps.size() != k * m) {
        throw std::invalid_argument("GfdmPrototype: expected " + std::to_string(k * m) + " taps");
    }
    GfdmPrototype p;
    p.k = k;
    p.m = m;
    p.g = std::move(taps);
    return p;
}

ComplexVector GfdmPrototype::polyphase(std::size_t ki) const {
    ComplexVector out(m);
    for (std::size_t mi = 0; mi < m; ++mi) out[mi] = g[ki + mi * k];
    return out;
}

double rrc_pulse(double t, double period, double rolloff) {
    const double x = t / period;
    const double a = rolloff;
    if (std::abs(x) < 1e-12) return 1.0 - a + 4.0 * a / kPi;
    if (a > 0.0 && std::abs(std::abs(x) - 1.0 / (4.0 * a)) < 1e-12) {
        return a / std::sqrt(2.0) *
               ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * a)) + (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * a)));
    }
    return (std::sin(kPi * x * (1.0 - a)) + 4.0 * a * x * std::cos(kPi * x * (1.0 + a))) /
           (kPi * x * (1.0 - (4.0 * a * x) * (4.0 * a * x)));
}

GfdmPrototype rrc_prototype(std::size_t k, std::size_t m, double rolloff) {
    check_dims(k, m);
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw std::invalid_argument("rrc_prototype: rolloff outside [0, 1]");
    const std::size_t n = k * m;
    std::vector<double> g(n);
    const double centre = (static_cast<double>(n) - 1.0) / 2.0;
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = rrc_pulse(static_cast<double>(i) - centre, static_cast<double>(k), rolloff);
        energy += g[i] * g[i];
    }
    const double s = std::sqrt(static_cast<double>(k) / energy);
    for (auto& v : g) v *= s;
    GfdmPrototype p = GfdmPrototype::from_taps(k, m, std::move(g));
    p.rolloff = rolloff;
    gfdm_zf_filter(p);  // reject singular configurations up front
    return p;
}

ComplexVector gfdm_modulate(const FrameGrid& grid, const GfdmPrototype& p) {
    if (grid.k != p.k || grid.m != p.m) throw std::invalid_argument("gfdm_modulate: grid is not K x M");
    const std::size_t K = p.k, M = p.m;
    // column m of dbar = IDFT_K(d_m); store transposed so each subcarrier is contiguous
    std::vector<ComplexVector> dbar(K, ComplexVector(M));
    ComplexVector col(K);
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t k = 0; k < K; ++k) col[k] = grid.at(m, k);
        idft_inplace(col);
        for (std::size_t k = 0; k < K; ++k) dbar[k][m] = col[k];
    }
    ComplexVector x(K * M);
    for (std::size_t k = 0; k < K; ++k) {
        const ComplexVector xk = circ_conv(p.polyphase(k), dbar[k]);
        for (std::size_t m = 0; m < M; ++m) x[k + m * K] = xk[m];
    }
    return x;
}

GfdmZfFilter gfdm_zf_filter(const GfdmPrototype& p) {
    GfdmZfFilter f;
    f.k = p.k;
    f.m = p.m;
    f.inverse.resize(p.k);
    const double sm = std::sqrt(static_cast<double>(p.m));
    for (std::size_t k = 0; k < p.k; ++k) {
        ComplexVector spec = dft(p.polyphase(k));  // unitary; unnormalized spectrum = sqrt(M) * spec
        for (std::size_t i = 0; i < p.m; ++i) {
            const cd bin = spec[i] * sm;
            if (std::abs(bin) < kSingularBin) {
                throw SingularPrototypeError("GFDM prototype not ZF-invertible: polyphase " + std::to_string(k) +
                                             " has |bin " + std::to_string(i) + "| < 1e-12");
            }
            spec[i] = 1.0 / bin;
        }
        idft_inplace(spec);
        for (auto& v : spec) v /= sm;
        f.inverse[k] = std::move(spec);
    }
    return f;
}

ComplexVector gfdm_zf_demodulate(std::span<const cd> x_hat, const GfdmZfFilter& f) {
    const std::size_t K = f.k, M = f.m;
    if (x_hat.size() != K * M) {
        throw std::invalid_argument("gfdm_zf_demodulate: expected " + std::to_string(K * M) + " samples, got " +
                                    std::to_string(x_hat.size()));
    }
    ComplexVector d(K * M);
    ComplexVector xk(M);
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t m = 0; m < M; ++m) xk[m] = x_hat[k + m * K];
        const ComplexVector e = circ_conv(f.inverse[k], xk);
        for (std::size_t m = 0; m < M; ++m) d[m * K + k] = e[m];
    }
    for (std::size_t m = 0; m < M; ++m) dft_inplace(std::span<cd>(d.data() + m * K, K));
    return d;
}

GfdmNpiConstants gfdm_npi_constants(const GfdmZfFilter& f) {
    GfdmNpiConstants c;
    c.energy.resize(f.k);
    double total = 0.0;
    for (std::size_t k = 0; k < f.k; ++k) {
        const double nk = norm2(f.inverse[k]);
        c.energy[k] = nk * nk;
        total += c.energy[k];
    }
    c.literal = total / static_cast<double>(f.k * f.m);
    c.calibration = static_cast<double>(f.m);
    return c;
}

double gfdm_npi(double v2, const GfdmNpiConstants& c) { return c.calibration * v2 * c.literal; }

void write_taps_csv(std::ostream& os, const std::vector<double>& taps) {
    os << "index,value\n";
    char buf[64];
    for (std::size_t i = 0; i < taps.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", taps[i]);
        os << i << ',' << buf << '\n';
    }
}

}  // namespace mcmimo
