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

#ifndef MCMIMO_METRICS_HPP
#define MCMIMO_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mcmimo/numerics.hpp"

namespace mcmimo {

// ---- PAPR ----

/// max|y|^2 / mean|y|^2 in dB, y = x spectrally zero-padded by `oversample` (1, 2 or 4).
double papr_db(std::span<const cd> x, std::size_t oversample = 4);

struct PaprRecord {
    std::vector<double> papr_db;  // per frame, in input order
    std::vector<double> sorted;   // ascending

    /// Fraction of frames with PAPR strictly above `threshold_db`.
    double ccdf(double threshold_db) const;
    /// Smallest observed PAPR t with ccdf(t) <= prob.
    double threshold_at(double prob) const;
    /// (threshold, ccdf) on a uniform grid from 0 to the largest PAPR (inclusive-rounded up).
    std::vector<std::pair<double, double>> curve(double step_db) const;
};

PaprRecord papr_ccdf(const std::vector<ComplexVector>& frames, std::size_t oversample = 4);

// ---- PSD / OOB ----

enum class WindowKind { hann, rectangular };
WindowKind window_from_name(const std::string& name);
std::string window_name(WindowKind w);

struct PsdRecord {
    std::size_t segment = 0;
    std::vector<double> freq_norm;  // bin / segment, in [0, 1)
    std::vector<double> psd;        // linear, sum(psd) / segment = window-weighted mean power
    std::vector<double> psd_db;     // relative to the in-band mean
    std::vector<std::size_t> in_band;
    std::vector<std::size_t> out_band;
};

/**
 * Averaged modified periodogram over segments of `segment` samples with the
 * given fractional overlap. Segments that would run past the end are dropped.
 * psd_db is relative to the mean over all bins until assign_bands is called.
 */
PsdRecord psd_welch(std::span<const cd> x, std::size_t segment, double overlap, WindowKind window);

/**
 * Classifies bins by their frequency in subcarrier units. In-band: the
 * K_active centred subcarriers. Out-of-band: bins at least `guard`
 * subcarriers beyond the band edge. Re-normalizes psd_db to the in-band mean.
 */
void assign_bands(PsdRecord& rec, std::size_t k, std::size_t k_active, double guard);

/// 10 log10(mean OOB / mean in-band).
double oob_ratio(const PsdRecord& rec);

// ---- complexity ----

struct ComplexityTerm {
    std::string term;
    std::uint64_t count;
};

/// (n / 2) ceil(log2 n) complex multiplications.
double fft_multiplies(std::size_t n);

/**
 * Itemized complex multiplications for one frame of U users on B antennas.
 * `waveform` is ofdm, scfdma, gfdm or fbmc; M counts QAM blocks (FBMC uses
 * 2M PAM subsymbols). The last term is "total".
 */
std::vector<ComplexityTerm> complexity_count(const std::string& waveform, std::size_t b, std::size_t u,
                                             std::size_t k, std::size_t m);
std::uint64_t complexity_total(const std::string& waveform, std::size_t b, std::size_t u, std::size_t k,
                               std::size_t m);

// ---- error counting ----

struct ErrorCounters {
    std::uint64_t symbols = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;

    void merge(const ErrorCounters& o);
    double ser() const { return symbols ? double(symbol_errors) / double(symbols) : 0.0; }
    double ber() const { return bits ? double(bit_errors) / double(bits) : 0.0; }
    double fer() const { return frames ? double(frame_errors) / double(frames) : 0.0; }
    bool operator==(const ErrorCounters&) const = default;
};

/// Counts one frame: symbol indices and bits are compared entry by entry.
void accumulate_errors(std::span<const std::size_t> true_symbols, std::span<const std::size_t> decided_symbols,
                       std::span<const std::uint8_t> true_bits, std::span<const std::uint8_t> decided_bits,
                       ErrorCounters& counters);

/// Wilson score interval for a binomial proportion (z = 1.96).
std::pair<double, double> binomial_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

}  // namespace mcmimo

#endif  // MCMIMO_METRICS_HPP
