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

#ifndef MCMIMO_CONSTELLATION_HPP
#define MCMIMO_CONSTELLATION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mcmimo/numerics.hpp"

namespace mcmimo {

using BitVector = std::vector<std::uint8_t>;

enum class ModulationKind { qam, pam };

struct Decision {
    std::size_t index;  // == Gray label
    cd point;
};

/**
 * Unit-energy QAM/PAM alphabet with a fixed Gray labeling.
 *
 * PAM of order m: amplitude level i (0..m-1, ascending) is 2i-m+1 and carries
 * label i ^ (i >> 1). Square QAM is the product of two such PAM axes; the
 * upper half of the label bits (MSB first) selects the in-phase level, the
 * lower half the quadrature level. points()[label] is the point for a label,
 * so "point index" and "label" are the same number throughout.
 */
class Constellation {
public:
    static Constellation qam(std::size_t order);
    static Constellation pam(std::size_t order);
    /// "qpsk", "16qam", "64qam", "2pam"/"bpsk", "4pam", "8pam".
    static Constellation from_name(const std::string& name);

    ModulationKind kind() const { return kind_; }
    std::size_t order() const { return points_.size(); }
    std::size_t bits_per_symbol() const { return bits_; }
    const std::vector<cd>& points() const { return points_; }
    std::string name() const;

    /// Bit j (0 = MSB) of the label of point `index`.
    std::uint8_t label_bit(std::size_t index, std::size_t j) const {
        return static_cast<std::uint8_t>((index >> (bits_ - 1 - j)) & 1U);
    }
    /// Levels per PAM axis (sqrt(order) for QAM, order for PAM).
    std::size_t axis_levels() const { return axis_levels_; }
    /// Unit-scaled PAM amplitude of each axis label.
    const std::vector<double>& axis_by_label() const { return axis_by_label_; }

private:
    Constellation(ModulationKind kind, std::size_t order);

    ModulationKind kind_;
    std::size_t bits_;
    std::size_t axis_levels_;
    double scale_;  // 1 / sqrt(average energy of the integer grid)
    std::vector<cd> points_;
    std::vector<double> axis_by_label_;  // PAM amplitude (unit scaled) per axis label
};

std::vector<cd> map_bits(std::span<const std::uint8_t> bits, const Constellation& c);

/// Nearest point; ties go to the lowest index.
Decision hard_decision(cd s, const Constellation& c);

constexpr double kDefaultLlrClamp = 64.0;

/**
 * Max-log LLRs, positive means bit 0 more likely:
 *   LLR_b = (min_{p: b=1} |s-p|^2 - min_{p: b=0} |s-p|^2) / npi, clamped to +-clamp.
 * npi is the variance of a circular complex noise term (E|n|^2). Square QAM
 * factorizes over the two axes, so only 2 sqrt(order) distances are evaluated.
 */
std::vector<double> llr_maxlog(cd s, double npi, const Constellation& c,
                               double clamp = kDefaultLlrClamp);
void llr_maxlog_into(cd s, double npi, const Constellation& c, std::span<double> out,
                     double clamp = kDefaultLlrClamp);

}  // namespace mcmimo

#endif  // MCMIMO_CONSTELLATION_HPP
