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

#ifndef MCMIMO_SIMULATOR_HPP
#define MCMIMO_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcmimo/config.hpp"
#include "mcmimo/equalizer.hpp"
#include "mcmimo/fbmc.hpp"
#include "mcmimo/gfdm.hpp"
#include "mcmimo/linear_waveforms.hpp"
#include "mcmimo/metrics.hpp"

namespace mcmimo {

/**
 * One waveform's transmitter and receiver for fixed K, M and alphabet.
 *
 * FBMC carries each QAM block's bits on two PAM subsymbols, using the PAM
 * alphabet of one QAM axis.
 */
class WaveformChain {
public:
    WaveformChain(Waveform w, std::size_t k, std::size_t m, std::size_t m_pam, std::size_t k_active,
                  const std::string& constellation, double rolloff);

    Waveform waveform() const { return waveform_; }
    const Constellation& constellation() const { return constellation_; }
    const SubcarrierMap& subcarriers() const { return map_; }
    /// Rows of the symbol grid (M, or M_pam for FBMC).
    std::size_t grid_rows() const;
    /// Number of K-point blocks handed to the channel.
    std::size_t fd_blocks() const;

    FrameGrid make_grid(RngStream& rng) const;
    ComplexVector time_signal(const FrameGrid& g) const;
    FdBlocks modulate(const FrameGrid& g) const;
    SymbolEstimate demodulate(const UserEstimate& eq) const;

    const GfdmPrototype* gfdm_prototype() const { return gfdm_ ? &gfdm_->proto : nullptr; }
    const PhydyasPrototype* fbmc_prototype() const { return fbmc_ ? &fbmc_->proto : nullptr; }

private:
    struct GfdmParts {
        GfdmPrototype proto;
        GfdmZfFilter zf;
        GfdmNpiConstants npi;
    };
    struct FbmcParts {
        PhydyasPrototype proto;
        FbmcNpiConstants npi;
    };

    Waveform waveform_;
    std::size_t k_;
    std::size_t m_;
    std::size_t m_pam_;
    SubcarrierMap map_;
    Constellation constellation_;
    std::shared_ptr<const GfdmParts> gfdm_;
    std::shared_ptr<const FbmcParts> fbmc_;
};

/// Runs fn(i) for i in [0, n) on `threads` workers (0: hardware concurrency).
/// The first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

std::size_t resolve_threads(std::size_t requested);

// ---- link-level error rates ----

struct LinkPoint {
    Waveform waveform;
    std::size_t b;
    double snr_db;
    double n0;
    ErrorCounters counters;
    std::size_t trials = 0;
    std::optional<std::string> failure;
};

struct LlrRecord {
    Waveform waveform;
    std::size_t b;
    double snr_db;
    std::size_t trial;
    std::size_t user;
    std::vector<double> llr;
};

struct LinkResult {
    std::vector<LinkPoint> points;
    std::vector<LlrRecord> llrs;
    std::map<std::size_t, ChannelRealization> channels;  // trial-0 channel per B, when dumped
};

/// Counters of one trial (all users) at one point; deterministic in its arguments.
ErrorCounters link_trial(const SimConfig& c, const WaveformChain& chain, std::size_t b, const NoisePoint& noise,
                         std::size_t trial, std::vector<LlrRecord>* llr_out = nullptr,
                         ChannelRealization* channel_out = nullptr);

/// Every (waveform, B, noise point) of the config; a numerical failure marks the point and moves on.
LinkResult run_link(const SimConfig& c);

// ---- PAPR / PSD / complexity ----

struct PaprResult {
    std::vector<std::pair<Waveform, PaprRecord>> records;
    std::vector<std::pair<Waveform, std::vector<ComplexVector>>> frames;  // only when dumping
};
PaprResult run_papr(const SimConfig& c);

struct PsdResult {
    std::vector<std::pair<Waveform, PsdRecord>> records;
    std::vector<std::pair<Waveform, double>> oob_db;
};
PsdResult run_psd(const SimConfig& c);

struct ComplexityRow {
    std::string waveform;
    std::size_t b, u, k, m;
    std::string term;
    std::uint64_t count;
};
std::vector<ComplexityRow> run_complexity(const SimConfig& c);

// ---- CSV / manifest ----

std::string errors_csv(const LinkResult& r, std::size_t u);
std::string llr_csv(const LinkResult& r);
std::string papr_ccdf_csv(const PaprResult& r, double step_db);
std::string papr_summary_csv(const PaprResult& r, std::size_t oversample);
std::string psd_csv(const PsdResult& r);
std::string oob_csv(const PsdResult& r, const SimConfig& c);
std::string complexity_csv(const std::vector<ComplexityRow>& rows);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);

struct RunManifest {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> files;  // name, checksum
    double wall_clock_s = 0.0;
    std::string version;
    std::string command;
    std::vector<std::string> failures;
    std::string to_text() const;
};

std::string software_version();

struct ExperimentSet {
    bool errors = false;
    bool papr = false;
    bool psd = false;
    bool complexity = false;
};

/// Runs the selected experiments, writes CSVs, the resolved config and the manifest into c.out_dir.
RunManifest run_experiments(const SimConfig& c, const ExperimentSet& which, const std::string& command);

enum class SweepAxis { snr, antennas };

/**
 * One link run per axis value (SNR in dB, or B), merged into a single
 * errors.csv. A value whose configuration or numerics fail is recorded in the
 * manifest and skipped.
 */
RunManifest run_sweep(const SimConfig& c, SweepAxis axis, const std::vector<double>& values,
                      const std::string& command);

}  // namespace mcmimo

#endif  // MCMIMO_SIMULATOR_HPP
