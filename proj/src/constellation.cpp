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

#include "mcmimo/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcmimo {

namespace {

std::size_t log2_exact(std::size_t n) {
    std::size_t b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

std::size_t gray(std::size_t i) { return i ^ (i >> 1); }

}  // namespace

Constellation::Constellation(ModulationKind kind, std::size_t order) : kind_(kind) {
    bits_ = log2_exact(order);
    if (order < 2 || (std::size_t{1} << bits_) != order) {
        throw std::invalid_argument("Constellation: order must be a power of two >= 2");
    }
    if (kind == ModulationKind::qam) {
        if (bits_ % 2 != 0) throw std::invalid_argument("Constellation: square QAM needs an even bit count");
        axis_levels_ = std::size_t{1} << (bits_ / 2);
        const double m = static_cast<double>(axis_levels_);
        scale_ = 1.0 / std::sqrt(2.0 * (m * m - 1.0) / 3.0);
    } else {
        axis_levels_ = order;
        const double m = static_cast<double>(axis_levels_);
        scale_ = 1.0 / std::sqrt((m * m - 1.0) / 3.0);
    }

    axis_by_label_.assign(axis_levels_, 0.0);
    for (std::size_t i = 0; i < axis_levels_; ++i) {
        const double level = 2.0 * static_cast<double>(i) - static_cast<double>(axis_levels_) + 1.0;
        axis_by_label_[gray(i)] = level * scale_;
    }

    points_.resize(order);
    if (kind == ModulationKind::qam) {
        const std::size_t half = bits_ / 2;
        for (std::size_t label = 0; label < order; ++label) {
            const std::size_t li = label >> half;
            const std::size_t lq = label & (axis_levels_ - 1);
            points_[label] = cd{axis_by_label_[li], axis_by_label_[lq]};
        }
    } else {
        for (std::size_t label = 0; label < order; ++label) points_[label] = cd{axis_by_label_[label], 0.0};
    }
}

Constellation Constellation::qam(std::size_t order) { return Constellation(ModulationKind::qam, order); }
Constellation Constellation::pam(std::size_t order) { return Constellation(ModulationKind::pam, order); }

Constellation Constellation::from_name(const std::string& name) {
    if (name == "qpsk" || name == "4qam") return qam(4);
    if (name == "16qam") return qam(16);
    if (name == "64qam") return qam(64);
    if (name == "256qam") return qam(256);
    if (name == "bpsk" || name == "2pam") return pam(2);
    if (name == "4pam") return pam(4);
    if (name == "8pam") return pam(8);
    if (name == "16pam") return pam(16);
    throw std::invalid_argument("unknown constellation '" + name + "'");
}

std::string Constellation::name() const {
    if (kind_ == ModulationKind::qam) return order() == 4 ? "qpsk" : std::to_string(order()) + "qam";
    return std::to_string(order()) + "pam";
}

std::vector<cd> map_bits(std::span<const std::uint8_t> bits, const Constellation& c) {
    const std::size_t bps = c.bits_per_symbol();
    if (bits.size() % bps != 0) {
        throw std::invalid_argument("map_bits: bit count " + std::to_string(bits.size()) +
                                    " not divisible by " + std::to_string(bps));
    }
    std::vector<cd> out(bits.size() / bps);
    for (std::size_t s = 0; s < out.size(); ++s) {
        std::size_t label = 0;
        for (std::size_t j = 0; j < bps; ++j) label = (label << 1) | (bits[s * bps + j] & 1U);
        out[s] = c.points()[label];
    }
    return out;
}

Decision hard_decision(cd s, const Constellation& c) {
    const auto& pts = c.points();
    std::size_t best = 0;
    double best_d = std::norm(s - pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = std::norm(s - pts[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return {best, pts[best]};
}

void llr_maxlog_into(cd s, double npi, const Constellation& c, std::span<double> out, double clamp) {
    if (!(npi > 0.0)) throw std::invalid_argument("llr_maxlog: npi must be > 0");
    const std::size_t bps = c.bits_per_symbol();
    if (out.size() != bps) throw std::invalid_argument("llr_maxlog: output size mismatch");

    constexpr double inf = std::numeric_limits<double>::infinity();
    // One PAM axis: labels 0..levels-1, `nbits` bits written to out[offset...].
    auto axis = [&](double y, std::size_t nbits, std::size_t offset) {
        double min0[8];
        double min1[8];
        std::fill(min0, min0 + nbits, inf);
        std::fill(min1, min1 + nbits, inf);
        for (std::size_t label = 0; label < c.axis_levels(); ++label) {
            const double e = y - c.axis_by_label()[label];
            const double d = e * e;
            for (std::size_t j = 0; j < nbits; ++j) {
                if ((label >> (nbits - 1 - j)) & 1U) {
                    min1[j] = std::min(min1[j], d);
                } else {
                    min0[j] = std::min(min0[j], d);
                }
            }
        }
        for (std::size_t j = 0; j < nbits; ++j) {
            const double llr = (min1[j] - min0[j]) / npi;
            out[offset + j] = std::clamp(llr, -clamp, clamp);
        }
    };

    if (c.kind() == ModulationKind::qam) {
        // |s-p|^2 splits into in-phase + quadrature terms and the label bits
        // split the same way, so each bit's two minima live on one axis.
        const std::size_t half = bps / 2;
        axis(s.real(), half, 0);
        axis(s.imag(), half, half);
    } else {
        // The imaginary offset is common to every point and cancels.
        axis(s.real(), bps, 0);
    }
}

std::vector<double> llr_maxlog(cd s, double npi, const Constellation& c, double clamp) {
    std::vector<double> out(c.bits_per_symbol());
    llr_maxlog_into(s, npi, c, out, clamp);
    return out;
}

}  // namespace mcmimo
