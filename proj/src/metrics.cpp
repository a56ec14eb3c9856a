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

#include "mcmimo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcmimo/fbmc.hpp"

namespace mcmimo {

double papr_db(std::span<const cd> x, std::size_t oversample) {
    if (x.empty()) throw std::invalid_argument("papr: empty frame");
    if (oversample != 1 && oversample != 2 && oversample != 4) {
        throw std::invalid_argument("papr: oversample must be 1, 2 or 4");
    }
    const std::size_t n = x.size();
    const std::size_t n_os = n * oversample;
    ComplexVector y;
    if (oversample == 1) {
        y.assign(x.begin(), x.end());
    } else {
        const ComplexVector spec = dft(x);
        ComplexVector padded(n_os, cd{0.0, 0.0});
        const std::size_t pos = (n + 1) / 2;  // non-negative frequencies
        for (std::size_t i = 0; i < pos; ++i) padded[i] = spec[i];
        for (std::size_t i = pos; i < n; ++i) padded[n_os - n + i] = spec[i];
        y = idft(padded);
    }
    double peak = 0.0, mean = 0.0;
    for (const auto& v : y) {
        const double p = std::norm(v);
        peak = std::max(peak, p);
        mean += p;
    }
    mean /= static_cast<double>(y.size());
    if (!(mean > 0.0)) throw std::invalid_argument("papr: all-zero frame");
    return 10.0 * std::log10(peak / mean);
}

double PaprRecord::ccdf(double threshold_db) const {
    if (sorted.empty()) return 0.0;
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), threshold_db);
    return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

double PaprRecord::threshold_at(double prob) const {
    if (sorted.empty()) throw std::invalid_argument("PaprRecord: no frames");
    if (!(prob > 0.0 && prob < 1.0)) throw std::invalid_argument("PaprRecord::threshold_at: prob outside (0, 1)");
    const double n = static_cast<double>(sorted.size());
    // P(X > sorted[i]) <= (n - 1 - i) / n  <= prob
    const double need = std::ceil(n * (1.0 - prob) - 1e-9) - 1.0;
    const std::size_t i = static_cast<std::size_t>(std::clamp(need, 0.0, n - 1.0));
    return sorted[i];
}

std::vector<std::pair<double, double>> PaprRecord::curve(double step_db) const {
    if (!(step_db > 0.0)) throw std::invalid_argument("PaprRecord::curve: step must be positive");
    std::vector<std::pair<double, double>> out;
    if (sorted.empty()) return out;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(sorted.back() / step_db)) + 1;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * step_db;
        out.emplace_back(t, ccdf(t));
    }
    return out;
}

PaprRecord papr_ccdf(const std::vector<ComplexVector>& frames, std::size_t oversample) {
    PaprRecord r;
    r.papr_db.reserve(frames.size());
    for (const auto& f : frames) r.papr_db.push_back(papr_db(f, oversample));
    r.sorted = r.papr_db;
    std::sort(r.sorted.begin(), r.sorted.end());
    return r;
}

WindowKind window_from_name(const std::string& name) {
    if (name == "hann") return WindowKind::hann;
    if (name == "rectangular" || name == "rect") return WindowKind::rectangular;
    throw std::invalid_argument("unknown window '" + name + "'");
}

std::string window_name(WindowKind w) { return w == WindowKind::hann ? "hann" : "rectangular"; }

namespace {

void normalize_db(PsdRecord& rec, const std::vector<std::size_t>& ref) {
    double mean = 0.0;
    for (std::size_t i : ref) mean += rec.psd[i];
    mean /= static_cast<double>(ref.size());
    rec.psd_db.resize(rec.psd.size());
    for (std::size_t i = 0; i < rec.psd.size(); ++i) {
        rec.psd_db[i] = 10.0 * std::log10(std::max(rec.psd[i], 1e-300) / mean);
    }
}

}  // namespace

PsdRecord psd_welch(std::span<const cd> x, std::size_t segment, double overlap, WindowKind window) {
    if (segment == 0 || segment > x.size()) {
        throw std::invalid_argument("psd_welch: segment length must be in [1, signal length]");
    }
    if (!(overlap >= 0.0 && overlap < 1.0)) throw std::invalid_argument("psd_welch: overlap must be in [0, 1)");
    const std::size_t hop = static_cast<std::size_t>(std::floor(static_cast<double>(segment) * (1.0 - overlap)));
    if (hop == 0) throw std::invalid_argument("psd_welch: overlap leaves a zero hop");

    std::vector<double> w(segment, 1.0);
    if (window == WindowKind::hann) {
        for (std::size_t i = 0; i < segment; ++i) {
            w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(segment));
        }
    }
    double wsum = 0.0;
    for (double v : w) wsum += v * v;
    if (!(wsum > 0.0)) throw std::invalid_argument("psd_welch: degenerate window");

    PsdRecord rec;
    rec.segment = segment;
    rec.psd.assign(segment, 0.0);
    const FftPlan& plan = fft_plan(segment);
    ComplexVector buf(segment), spec(segment);
    std::size_t count = 0;
    for (std::size_t s = 0; s + segment <= x.size(); s += hop) {
        for (std::size_t i = 0; i < segment; ++i) buf[i] = x[s + i] * w[i];
        plan.forward(buf.data(), spec.data());
        for (std::size_t i = 0; i < segment; ++i) rec.psd[i] += std::norm(spec[i]);
        ++count;
    }
    // |FFT|^2 / sum(w^2) per segment: sum over bins / segment = weighted mean power
    for (auto& v : rec.psd) v /= static_cast<double>(count) * wsum;
    rec.freq_norm.resize(segment);
    for (std::size_t i = 0; i < segment; ++i) rec.freq_norm[i] = static_cast<double>(i) / static_cast<double>(segment);
    rec.in_band.resize(segment);
    for (std::size_t i = 0; i < segment; ++i) rec.in_band[i] = i;
    normalize_db(rec, rec.in_band);
    return rec;
}

void assign_bands(PsdRecord& rec, std::size_t k, std::size_t k_active, double guard) {
    if (k == 0 || k_active == 0 || k_active > k) throw std::invalid_argument("assign_bands: need 0 < K_active <= K");
    if (!(guard >= 0.0)) throw std::invalid_argument("assign_bands: guard must be >= 0");
    rec.in_band.clear();
    rec.out_band.clear();
    const double half_k = static_cast<double>(k) / 2.0;
    const double half_a = static_cast<double>(k_active) / 2.0;
    for (std::size_t i = 0; i < rec.segment; ++i) {
        const double f = rec.freq_norm[i] * static_cast<double>(k);  // subcarrier units
        const double c = f < half_k ? f : f - static_cast<double>(k);
        if (c >= -half_a && c < half_a) {
            rec.in_band.push_back(i);
        } else if (c >= half_a - 0.5 + guard || c < -half_a - 0.5 - guard) {
            rec.out_band.push_back(i);
        }
    }
    if (rec.in_band.empty()) throw std::invalid_argument("assign_bands: empty in-band set");
    normalize_db(rec, rec.in_band);
}

double oob_ratio(const PsdRecord& rec) {
    if (rec.in_band.empty() || rec.out_band.empty()) throw std::invalid_argument("oob_ratio: empty band");
    double in = 0.0, out = 0.0;
    for (std::size_t i : rec.in_band) in += rec.psd.at(i);
    for (std::size_t i : rec.out_band) out += rec.psd.at(i);
    in /= static_cast<double>(rec.in_band.size());
    out /= static_cast<double>(rec.out_band.size());
    return 10.0 * std::log10(out / in);
}

double fft_multiplies(std::size_t n) {
    if (n < 2) return 0.0;
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    return static_cast<double>(n) / 2.0 * static_cast<double>(bits);
}

std::vector<ComplexityTerm> complexity_count(const std::string& waveform, std::size_t b, std::size_t u,
                                             std::size_t k, std::size_t m) {
    if (b == 0 || u == 0 || k == 0 || m == 0) throw std::invalid_argument("complexity_count: zero dimension");
    const double B = double(b), U = double(u), K = double(k), M = double(m);
    const double fft_k = fft_multiplies(k);
    std::vector<std::pair<std::string, double>> terms;
    terms.emplace_back("fd_equalization", K * M * (B * U * U + B * U + U * U * U / 3.0 + 2.0 * U * U));
    terms.emplace_back("antenna_transforms", B * M * fft_k);
    if (waveform == "ofdm") {
        terms.emplace_back("user_demodulation", 0.0);
    } else if (waveform == "scfdma") {
        terms.emplace_back("user_demodulation", U * M * fft_k);
    } else if (waveform == "gfdm") {
        // back to time domain, direct circular convolution per subcarrier, final K-point DFT
        terms.emplace_back("user_demodulation", U * (2.0 * M * fft_k + K * M * M));
    } else if (waveform == "fbmc") {
        const std::size_t m_pam = 2 * m;
        const std::size_t l = 4 * k;
        const double blocks = std::ceil(double(fbmc_length(k, m_pam, l)) / K);
        terms.emplace_back("user_demodulation",
                           U * (blocks * fft_k + double(m_pam) * (fft_k + (double(l) + K) / 2.0)));
    } else {
        throw std::invalid_argument("complexity_count: unknown waveform '" + waveform + "'");
    }
    std::vector<ComplexityTerm> out;
    std::uint64_t total = 0;
    for (const auto& [name, v] : terms) {
        const auto c = static_cast<std::uint64_t>(std::llround(v));
        out.push_back({name, c});
        total += c;
    }
    out.push_back({"total", total});
    return out;
}

std::uint64_t complexity_total(const std::string& waveform, std::size_t b, std::size_t u, std::size_t k,
                               std::size_t m) {
    return complexity_count(waveform, b, u, k, m).back().count;
}

void ErrorCounters::merge(const ErrorCounters& o) {
    symbols += o.symbols;
    symbol_errors += o.symbol_errors;
    bits += o.bits;
    bit_errors += o.bit_errors;
    frames += o.frames;
    frame_errors += o.frame_errors;
}

void accumulate_errors(std::span<const std::size_t> true_symbols, std::span<const std::size_t> decided_symbols,
                       std::span<const std::uint8_t> true_bits, std::span<const std::uint8_t> decided_bits,
                       ErrorCounters& counters) {
    if (true_symbols.size() != decided_symbols.size() || true_bits.size() != decided_bits.size()) {
        throw std::invalid_argument("accumulate_errors: length mismatch");
    }
    std::uint64_t se = 0, be = 0;
    for (std::size_t i = 0; i < true_symbols.size(); ++i) se += true_symbols[i] != decided_symbols[i];
    for (std::size_t i = 0; i < true_bits.size(); ++i) be += (true_bits[i] & 1U) != (decided_bits[i] & 1U);
    counters.symbols += true_symbols.size();
    counters.symbol_errors += se;
    counters.bits += true_bits.size();
    counters.bit_errors += be;
    counters.frames += 1;
    counters.frame_errors += (be > 0 || se > 0) ? 1 : 0;
}

std::pair<double, double> binomial_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = double(trials);
    const double p = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace mcmimo
