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

#ifndef MCMIMO_CONFIG_HPP
#define MCMIMO_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcmimo/channel.hpp"
#include "mcmimo/metrics.hpp"

namespace mcmimo {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Waveform { ofdm, scfdma, gfdm, fbmc };

Waveform waveform_from_name(const std::string& name);
std::string waveform_name(Waveform w);

struct PaprSettings {
    std::size_t frames = 10000;
    std::size_t oversample = 4;
    double step_db = 0.05;
    bool dump_frames = false;
};

struct PsdSettings {
    std::size_t frames = 60;      // frames concatenated per waveform
    std::size_t k_active = 0;     // 0: the link K_active, or 3K/4 when that is all of K
    std::size_t segment = 0;      // 0: 8K
    double overlap = 0.5;
    WindowKind window = WindowKind::hann;
    double guard = 1.0;           // subcarriers between the band edge and the OOB region
};

struct ComplexitySettings {
    std::vector<std::size_t> b_values;  // empty: the link B values
    std::size_t k = 0;                  // 0: link K
    std::size_t m = 0;                  // 0: link M
};

struct MetricToggles {
    bool errors = true;
    bool papr = false;
    bool psd = false;
    bool complexity = false;
};

/**
 * Everything a run depends on. Fields left at zero/empty in the file are
 * resolved by parse_config; the resolved form is what gets echoed and hashed.
 */
struct SimConfig {
    int schema_version = 1;
    std::vector<Waveform> waveforms{Waveform::ofdm, Waveform::scfdma, Waveform::gfdm, Waveform::fbmc};
    std::size_t k = 64;
    std::size_t m = 14;
    std::size_t m_pam = 0;     // 0: 2M
    std::size_t k_active = 0;  // 0: K
    std::string constellation = "64qam";
    double rolloff = 0.25;
    std::vector<std::size_t> b_values{8};
    std::size_t u = 8;
    ChannelSpec channel;
    std::vector<double> snr_db{30.0};
    std::vector<double> n0;  // when non-empty, used instead of snr_db
    std::size_t trials = 100;
    std::uint64_t master_seed = 1;
    std::size_t threads = 0;  // 0: hardware concurrency
    MetricToggles metrics;
    PaprSettings papr;
    PsdSettings psd;
    ComplexitySettings complexity;
    std::string out_dir = "results";
    bool dump_llr = false;
    std::size_t dump_llr_trials = 1;
    bool dump_channel = false;
};

/// Parses JSON text, fills defaults and validates; throws ConfigError.
SimConfig parse_config(const std::string& json_text);
SimConfig load_config(const std::string& path);
/// Applies defaults that depend on other fields (m_pam, k_active, PSD and complexity settings).
void resolve_config(SimConfig& c);
/// Throws ConfigError naming the first offending field.
void validate_config(const SimConfig& c);
/// Canonical JSON of a resolved configuration.
std::string config_to_json(const SimConfig& c);

/// Noise variance per point and its SNR label (1/N0 in dB).
struct NoisePoint {
    double snr_db;
    double n0;
};
std::vector<NoisePoint> noise_points(const SimConfig& c);

}  // namespace mcmimo

#endif  // MCMIMO_CONFIG_HPP
