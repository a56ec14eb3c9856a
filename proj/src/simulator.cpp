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

#include "mcmimo/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#ifndef MCMIMO_VERSION
#define MCMIMO_VERSION "unknown"
#endif

namespace mcmimo {

namespace {

// stream purposes
enum : std::uint64_t { kBits = 1, kChannel = 2, kNoise = 3, kPapr = 4, kPsd = 5 };

std::size_t isqrt_exact(std::size_t n) {
    std::size_t r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r * r != n) throw std::invalid_argument("not a square: " + std::to_string(n));
    return r;
}

Constellation chain_constellation(Waveform w, const std::string& name) {
    Constellation c = Constellation::from_name(name);
    if (w != Waveform::fbmc) return c;
    if (c.kind() != ModulationKind::qam) throw std::invalid_argument("FBMC needs a square QAM constellation to split");
    return Constellation::pam(isqrt_exact(c.order()));
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string fmt_snr(double s) { return std::isinf(s) ? std::string("inf") : fmt("%.6g", s); }

// Labels in (row, active bin) order; rows 2i and 2i+1 merge into one symbol (a trailing odd row stays single).
std::vector<std::size_t> pair_labels(const std::vector<std::size_t>& labels, std::size_t per_row, std::size_t order) {
    const std::size_t rows = labels.size() / per_row;
    std::vector<std::size_t> out;
    out.reserve((rows + 1) / 2 * per_row);
    for (std::size_t r = 0; r < rows; r += 2) {
        for (std::size_t j = 0; j < per_row; ++j) {
            const std::size_t first = labels[r * per_row + j];
            out.push_back(r + 1 < rows ? first * order + labels[(r + 1) * per_row + j] : first);
        }
    }
    return out;
}

ChannelRealization trial_channel(const SimConfig& c, const WaveformChain& chain, std::size_t b,
                                 std::size_t trial) {
    RngStream rng(c.master_seed, stream_id({kChannel, b, c.u, trial}));
    return generate_channel(b, c.u, c.k, chain.fd_blocks(), c.channel, rng);
}

}  // namespace

// ---------------------------------------------------------------------------

WaveformChain::WaveformChain(Waveform w, std::size_t k, std::size_t m, std::size_t m_pam, std::size_t k_active,
                             const std::string& constellation, double rolloff)
    : waveform_(w),
      k_(k),
      m_(m),
      m_pam_(m_pam),
      map_(k, k_active),
      constellation_(chain_constellation(w, constellation)) {
    if (w == Waveform::gfdm) {
        auto parts = std::make_shared<GfdmParts>();
        parts->proto = rrc_prototype(k, m, rolloff);
        parts->zf = gfdm_zf_filter(parts->proto);
        parts->npi = gfdm_npi_constants(parts->zf);
        gfdm_ = parts;
    } else if (w == Waveform::fbmc) {
        auto parts = std::make_shared<FbmcParts>();
        parts->proto = phydyas_prototype(k);
        parts->npi = fbmc_npi_constants(parts->proto, m_pam);
        fbmc_ = parts;
    }
}

std::size_t WaveformChain::grid_rows() const { return waveform_ == Waveform::fbmc ? m_pam_ : m_; }

std::size_t WaveformChain::fd_blocks() const {
    if (waveform_ == Waveform::fbmc) return (fbmc_length(k_, m_pam_, fbmc_->proto.l) + k_ - 1) / k_;
    return m_;
}

FrameGrid WaveformChain::make_grid(RngStream& rng) const {
    return random_grid(grid_rows(), constellation_, map_, rng);
}

ComplexVector WaveformChain::time_signal(const FrameGrid& g) const {
    switch (waveform_) {
        case Waveform::ofdm: return blocks_to_td(ofdm_modulate(g));
        case Waveform::scfdma: return blocks_to_td(scfdma_modulate(g, map_));
        case Waveform::gfdm: return gfdm_modulate(g, gfdm_->proto);
        case Waveform::fbmc: return fbmc_modulate(g, fbmc_->proto);
    }
    return {};
}

FdBlocks WaveformChain::modulate(const FrameGrid& g) const {
    switch (waveform_) {
        case Waveform::ofdm: return ofdm_modulate(g);
        case Waveform::scfdma: return scfdma_modulate(g, map_);
        case Waveform::gfdm:
        case Waveform::fbmc: return td_to_blocks(time_signal(g), k_);
    }
    return {};
}

SymbolEstimate WaveformChain::demodulate(const UserEstimate& eq) const {
    switch (waveform_) {
        case Waveform::ofdm: return ofdm_demodulate(eq);
        case Waveform::scfdma: return scfdma_demodulate(eq, map_);
        case Waveform::gfdm: {
            const ComplexVector x_hat = blocks_to_td(eq.s_hat);
            SymbolEstimate out;
            out.k = k_;
            out.m = m_;
            out.symbols = gfdm_zf_demodulate(x_hat, gfdm_->zf);
            out.npi.assign(k_ * m_, gfdm_npi(frame_td_npi(eq), gfdm_->npi));
            return out;
        }
        case Waveform::fbmc: {
            const ComplexVector x_hat = blocks_to_td(eq.s_hat);
            const FbmcDemodOutput d = fbmc_demodulate(x_hat, fbmc_->proto, m_pam_);
            // v2_hat_m is the complex-statistic variance; the real part carries half of it,
            // which is the demapper's npi for a real observation.
            const std::vector<double> v2_hat = fbmc_npi(frame_td_npi(eq), fbmc_->npi);
            SymbolEstimate out;
            out.k = k_;
            out.m = m_pam_;
            out.symbols.resize(k_ * m_pam_);
            out.npi.resize(k_ * m_pam_);
            for (std::size_t m = 0; m < m_pam_; ++m) {
                for (std::size_t k = 0; k < k_; ++k) {
                    out.symbols[m * k_ + k] = cd{d.symbols[m * k_ + k], 0.0};
                    out.npi[m * k_ + k] = v2_hat[m];
                }
            }
            return out;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------

std::size_t resolve_threads(std::size_t requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || stop.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first) first = std::current_exception();
                    stop = true;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

// ---------------------------------------------------------------------------

ErrorCounters link_trial(const SimConfig& c, const WaveformChain& chain, std::size_t b, const NoisePoint& noise,
                         std::size_t trial, std::vector<LlrRecord>* llr_out, ChannelRealization* channel_out) {
    const std::size_t U = c.u;
    std::vector<FrameGrid> grids(U);
    std::vector<FdBlocks> tx(U);
    for (std::size_t u = 0; u < U; ++u) {
        RngStream rb(c.master_seed, stream_id({kBits, trial, u}));
        grids[u] = chain.make_grid(rb);
        tx[u] = chain.modulate(grids[u]);
    }
    const ChannelRealization h = trial_channel(c, chain, b, trial);
    RngStream rn(c.master_seed, stream_id({kNoise, b, U, std::bit_cast<std::uint64_t>(noise.n0), trial}));
    const ReceivedFrame y = apply_channel(tx, h, noise.n0, rn);
    const EqualizedFrame eq = mmse_equalize(y, h, noise.n0);
    if (channel_out) *channel_out = h;

    const Constellation& con = chain.constellation();
    const std::size_t bps = con.bits_per_symbol();
    const auto& active = chain.subcarriers().active();
    ErrorCounters total;
    std::vector<double> llr(bps);
    for (std::size_t u = 0; u < U; ++u) {
        const SymbolEstimate est = chain.demodulate(eq.users[u]);
        const FrameGrid& g = grids[u];
        std::vector<std::size_t> decided(g.labels.size());
        std::vector<std::uint8_t> bits(g.source_bits.size());
        LlrRecord rec;
        const bool keep = llr_out != nullptr;
        if (keep) rec.llr.reserve(bits.size());
        std::size_t s = 0;
        for (std::size_t m = 0; m < g.m; ++m) {
            for (std::size_t bin : active) {
                const std::size_t idx = m * g.k + bin;
                const cd sym = est.symbols[idx];
                llr_maxlog_into(sym, std::max(est.npi[idx], 1e-30), con, llr);
                for (std::size_t j = 0; j < bps; ++j) bits[s * bps + j] = llr[j] < 0.0 ? 1 : 0;
                if (keep) rec.llr.insert(rec.llr.end(), llr.begin(), llr.end());
                decided[s] = hard_decision(sym, con).index;
                ++s;
            }
        }
        ErrorCounters cu;
        if (chain.waveform() == Waveform::fbmc) {
            // one QAM symbol's bits ride on subsymbols 2i and 2i+1 of a subcarrier
            const auto t = pair_labels(g.labels, active.size(), con.order());
            const auto d = pair_labels(decided, active.size(), con.order());
            accumulate_errors(t, d, g.source_bits, bits, cu);
        } else {
            accumulate_errors(g.labels, decided, g.source_bits, bits, cu);
        }
        total.merge(cu);
        if (keep) {
            rec.waveform = chain.waveform();
            rec.b = b;
            rec.snr_db = noise.snr_db;
            rec.trial = trial;
            rec.user = u;
            llr_out->push_back(std::move(rec));
        }
    }
    return total;
}

LinkResult run_link(const SimConfig& c) {
    const auto noise = noise_points(c);
    std::vector<WaveformChain> chains;
    for (Waveform w : c.waveforms) chains.emplace_back(w, c.k, c.m, c.m_pam, c.k_active, c.constellation, c.rolloff);

    LinkResult r;
    struct Key {
        std::size_t chain, b, noise;
    };
    std::vector<Key> keys;
    for (std::size_t w = 0; w < chains.size(); ++w)
        for (std::size_t b : c.b_values)
            for (std::size_t n = 0; n < noise.size(); ++n) keys.push_back({w, b, n});

    const std::size_t n_tasks = keys.size() * c.trials;
    std::vector<ErrorCounters> counters(n_tasks);
    std::vector<std::string> errors(n_tasks);
    std::vector<std::vector<LlrRecord>> llrs(n_tasks);
    parallel_for(n_tasks, c.threads, [&](std::size_t t) {
        const Key& key = keys[t / c.trials];
        const std::size_t trial = t % c.trials;
        const bool dump = c.dump_llr && trial < c.dump_llr_trials;
        try {
            counters[t] = link_trial(c, chains[key.chain], key.b, noise[key.noise], trial, dump ? &llrs[t] : nullptr);
        } catch (const NumericalError& e) {
            errors[t] = e.what();
        }
    });

    for (std::size_t p = 0; p < keys.size(); ++p) {
        LinkPoint pt{chains[keys[p].chain].waveform(), keys[p].b, noise[keys[p].noise].snr_db, noise[keys[p].noise].n0,
                     {}, 0, std::nullopt};
        for (std::size_t trial = 0; trial < c.trials; ++trial) {
            const std::size_t t = p * c.trials + trial;
            if (!errors[t].empty()) {
                if (!pt.failure) {
                    pt.failure = waveform_name(pt.waveform) + " B=" + std::to_string(pt.b) + " snr_db=" +
                                 fmt_snr(pt.snr_db) + " trial " + std::to_string(trial) + ": " + errors[t];
                }
                continue;
            }
            pt.counters.merge(counters[t]);
            ++pt.trials;
            for (auto& rec : llrs[t]) r.llrs.push_back(std::move(rec));
        }
        r.points.push_back(std::move(pt));
    }
    if (c.dump_channel) {
        for (std::size_t b : c.b_values) r.channels.emplace(b, trial_channel(c, chains.front(), b, 0));
    }
    return r;
}

// ---------------------------------------------------------------------------

PaprResult run_papr(const SimConfig& c) {
    PaprResult r;
    for (Waveform w : c.waveforms) {
        const WaveformChain chain(w, c.k, c.m, c.m_pam, c.k_active, c.constellation, c.rolloff);
        std::vector<double> values(c.papr.frames);
        std::vector<ComplexVector> frames(c.papr.dump_frames ? c.papr.frames : 0);
        parallel_for(c.papr.frames, c.threads, [&](std::size_t f) {
            RngStream rng(c.master_seed, stream_id({kPapr, static_cast<std::uint64_t>(w), f}));
            ComplexVector x = chain.time_signal(chain.make_grid(rng));
            values[f] = papr_db(x, c.papr.oversample);
            if (c.papr.dump_frames) frames[f] = std::move(x);
        });
        PaprRecord rec;
        rec.papr_db = values;
        rec.sorted = values;
        std::sort(rec.sorted.begin(), rec.sorted.end());
        r.records.emplace_back(w, std::move(rec));
        if (c.papr.dump_frames) r.frames.emplace_back(w, std::move(frames));
    }
    return r;
}

PsdResult run_psd(const SimConfig& c) {
    PsdResult r;
    r.records.resize(c.waveforms.size());
    r.oob_db.resize(c.waveforms.size());
    parallel_for(c.waveforms.size(), c.threads, [&](std::size_t i) {
        const Waveform w = c.waveforms[i];
        const WaveformChain chain(w, c.k, c.m, c.m_pam, c.psd.k_active, c.constellation, c.rolloff);
        ComplexVector x;
        for (std::size_t f = 0; f < c.psd.frames; ++f) {
            RngStream rng(c.master_seed, stream_id({kPsd, static_cast<std::uint64_t>(w), f}));
            const ComplexVector frame = chain.time_signal(chain.make_grid(rng));
            x.insert(x.end(), frame.begin(), frame.end());
        }
        PsdRecord rec = psd_welch(x, c.psd.segment, c.psd.overlap, c.psd.window);
        assign_bands(rec, c.k, c.psd.k_active, c.psd.guard);
        r.oob_db[i] = {w, oob_ratio(rec)};
        r.records[i] = {w, std::move(rec)};
    });
    return r;
}

std::vector<ComplexityRow> run_complexity(const SimConfig& c) {
    std::vector<ComplexityRow> rows;
    for (Waveform w : c.waveforms) {
        for (std::size_t b : c.complexity.b_values) {
            for (const auto& t : complexity_count(waveform_name(w), b, c.u, c.complexity.k, c.complexity.m)) {
                rows.push_back({waveform_name(w), b, c.u, c.complexity.k, c.complexity.m, t.term, t.count});
            }
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------

std::string errors_csv(const LinkResult& r, std::size_t u) {
    std::ostringstream os;
    os << "waveform,snr_db,B,U,ser,ber,fer,trials\n";
    for (const auto& p : r.points) {
        if (p.failure) continue;
        os << waveform_name(p.waveform) << ',' << fmt_snr(p.snr_db) << ',' << p.b << ',' << u << ','
           << fmt("%.9e", p.counters.ser()) << ',' << fmt("%.9e", p.counters.ber()) << ','
           << fmt("%.9e", p.counters.fer()) << ',' << p.trials << '\n';
    }
    return os.str();
}

std::string llr_csv(const LinkResult& r) {
    std::ostringstream os;
    os << "waveform,snr_db,B,trial,user,bit,llr\n";
    for (const auto& rec : r.llrs) {
        const std::string head = waveform_name(rec.waveform) + "," + fmt_snr(rec.snr_db) + "," +
                                 std::to_string(rec.b) + "," + std::to_string(rec.trial) + "," +
                                 std::to_string(rec.user) + ",";
        for (std::size_t i = 0; i < rec.llr.size(); ++i) os << head << i << ',' << fmt("%.9e", rec.llr[i]) << '\n';
    }
    return os.str();
}

std::string papr_ccdf_csv(const PaprResult& r, double step_db) {
    std::ostringstream os;
    os << "waveform,threshold_db,ccdf\n";
    for (const auto& [w, rec] : r.records) {
        for (const auto& [t, p] : rec.curve(step_db)) {
            os << waveform_name(w) << ',' << fmt("%.4f", t) << ',' << fmt("%.9e", p) << '\n';
        }
    }
    return os.str();
}

std::string papr_summary_csv(const PaprResult& r, std::size_t oversample) {
    std::ostringstream os;
    os << "waveform,frames,oversample,papr_db_at_1e-2,papr_db_at_1e-3\n";
    for (const auto& [w, rec] : r.records) {
        const std::size_t n = rec.sorted.size();
        os << waveform_name(w) << ',' << n << ',' << oversample << ','
           << (n >= 100 ? fmt("%.6f", rec.threshold_at(1e-2)) : std::string("nan")) << ','
           << (n >= 1000 ? fmt("%.6f", rec.threshold_at(1e-3)) : std::string("nan")) << '\n';
    }
    return os.str();
}

std::string psd_csv(const PsdResult& r) {
    std::ostringstream os;
    os << "waveform,freq_norm,psd_db\n";
    for (const auto& [w, rec] : r.records) {
        const std::size_t n = rec.segment;
        // centred order, -1/2 .. 1/2
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t i = (j + (n + 1) / 2) % n;
            const double f = rec.freq_norm[i] >= 0.5 ? rec.freq_norm[i] - 1.0 : rec.freq_norm[i];
            os << waveform_name(w) << ',' << fmt("%.6f", f) << ',' << fmt("%.6f", rec.psd_db[i]) << '\n';
        }
    }
    return os.str();
}

std::string oob_csv(const PsdResult& r, const SimConfig& c) {
    std::ostringstream os;
    os << "waveform,K,k_active,segment,oob_db\n";
    for (const auto& [w, v] : r.oob_db) {
        os << waveform_name(w) << ',' << c.k << ',' << c.psd.k_active << ',' << c.psd.segment << ','
           << fmt("%.4f", v) << '\n';
    }
    return os.str();
}

std::string complexity_csv(const std::vector<ComplexityRow>& rows) {
    std::ostringstream os;
    os << "waveform,B,U,K,M,term,count\n";
    for (const auto& r : rows) {
        os << r.waveform << ',' << r.b << ',' << r.u << ',' << r.k << ',' << r.m << ',' << r.term << ',' << r.count
           << '\n';
    }
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_file(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    out << bytes;
    if (!out) throw std::runtime_error("write failed for '" + p.string() + "'");
}

std::string frames_binary(const std::vector<ComplexVector>& frames) {
    // u64 count, u64 length, then interleaved little-endian doubles
    std::string out;
    const std::uint64_t n = frames.size();
    const std::uint64_t len = frames.empty() ? 0 : frames.front().size();
    out.append(reinterpret_cast<const char*>(&n), sizeof n);
    out.append(reinterpret_cast<const char*>(&len), sizeof len);
    for (const auto& f : frames) {
        if (f.size() != len) throw std::runtime_error("frames_binary: ragged frames");
        out.append(reinterpret_cast<const char*>(f.data()), f.size() * sizeof(cd));
    }
    return out;
}

}  // namespace

std::string software_version() { return MCMIMO_VERSION; }

std::string RunManifest::to_text() const {
    std::ostringstream os;
    os << "version=" << version << '\n';
    os << "command=" << command << '\n';
    os << "config_hash=" << config_hash << '\n';
    os << "seed=" << seed << '\n';
    for (const auto& [name, sum] : files) os << "file." << name << '=' << sum << '\n';
    os << "wall_clock_s=" << fmt("%.3f", wall_clock_s) << '\n';
    os << "failures=" << failures.size() << '\n';
    for (std::size_t i = 0; i < failures.size(); ++i) os << "failure." << i << '=' << failures[i] << '\n';
    return os.str();
}

RunManifest run_experiments(const SimConfig& c, const ExperimentSet& which, const std::string& command) {
    const auto start = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    const fs::path dir(c.out_dir);
    fs::create_directories(dir);

    RunManifest man;
    man.version = software_version();
    man.command = command;
    const std::string resolved = config_to_json(c);
    man.config_hash = hex64(fnv1a64(resolved));
    man.seed = c.master_seed;

    std::vector<std::pair<std::string, std::string>> outputs;
    outputs.emplace_back("config.resolved.json", resolved);

    if (which.errors) {
        const LinkResult r = run_link(c);
        outputs.emplace_back("errors.csv", errors_csv(r, c.u));
        if (c.dump_llr) outputs.emplace_back("llr.csv", llr_csv(r));
        for (const auto& [b, h] : r.channels) {
            std::ostringstream os;
            write_channel_csv(os, h);
            outputs.emplace_back("channel_B" + std::to_string(b) + "_trial0.csv", os.str());
        }
        for (const auto& p : r.points) {
            if (p.failure) man.failures.push_back(*p.failure);
        }
    }
    if (which.papr) {
        const PaprResult r = run_papr(c);
        outputs.emplace_back("papr_ccdf.csv", papr_ccdf_csv(r, c.papr.step_db));
        outputs.emplace_back("papr_summary.csv", papr_summary_csv(r, c.papr.oversample));
        for (const auto& [w, frames] : r.frames) {
            outputs.emplace_back("papr_frames_" + waveform_name(w) + ".bin", frames_binary(frames));
        }
    }
    if (which.psd) {
        const PsdResult r = run_psd(c);
        outputs.emplace_back("psd.csv", psd_csv(r));
        outputs.emplace_back("oob.csv", oob_csv(r, c));
    }
    if (which.complexity) outputs.emplace_back("complexity.csv", complexity_csv(run_complexity(c)));

    for (const auto& [name, bytes] : outputs) {
        write_file(dir / name, bytes);
        man.files.emplace_back(name, hex64(fnv1a64(bytes)));
    }
    man.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(dir / "manifest.txt", man.to_text());
    return man;
}

RunManifest run_sweep(const SimConfig& c, SweepAxis axis, const std::vector<double>& values,
                      const std::string& command) {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    const auto start = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    const fs::path dir(c.out_dir);
    fs::create_directories(dir);

    SimConfig resolved_all = c;
    if (axis == SweepAxis::snr) {
        resolved_all.snr_db = values;
        resolved_all.n0.clear();
    } else {
        resolved_all.b_values.clear();
        for (double v : values) resolved_all.b_values.push_back(static_cast<std::size_t>(std::llround(v)));
    }

    RunManifest man;
    man.version = software_version();
    man.command = command;
    const std::string resolved = config_to_json(resolved_all);
    man.config_hash = hex64(fnv1a64(resolved));
    man.seed = c.master_seed;

    LinkResult merged;
    for (double v : values) {
        SimConfig pc = c;
        std::string label;
        if (axis == SweepAxis::snr) {
            pc.snr_db = {v};
            pc.n0.clear();
            label = "snr_db=" + fmt_snr(v);
        } else {
            if (!(v >= 1.0) || v != std::floor(v)) {
                man.failures.push_back("B=" + fmt("%g", v) + ": not a positive integer");
                continue;
            }
            pc.b_values = {static_cast<std::size_t>(v)};
            pc.complexity.b_values = pc.b_values;
            label = "B=" + std::to_string(pc.b_values[0]);
        }
        try {
            validate_config(pc);
            LinkResult r = run_link(pc);
            for (auto& p : r.points) {
                if (p.failure) man.failures.push_back(*p.failure);
                merged.points.push_back(std::move(p));
            }
            for (auto& l : r.llrs) merged.llrs.push_back(std::move(l));
            for (auto& [b, h] : r.channels) merged.channels.emplace(b, std::move(h));
        } catch (const ConfigError& e) {
            man.failures.push_back(label + ": " + e.what());
        } catch (const NumericalError& e) {
            man.failures.push_back(label + ": " + e.what());
        }
    }
    // group rows by waveform, then B, then SNR regardless of the axis order
    std::stable_sort(merged.points.begin(), merged.points.end(), [&](const LinkPoint& a, const LinkPoint& b) {
        auto pos = [&](Waveform w) {
            return std::find(c.waveforms.begin(), c.waveforms.end(), w) - c.waveforms.begin();
        };
        if (a.waveform != b.waveform) return pos(a.waveform) < pos(b.waveform);
        if (a.b != b.b) return a.b < b.b;
        return a.snr_db < b.snr_db;
    });

    std::vector<std::pair<std::string, std::string>> outputs;
    outputs.emplace_back("config.resolved.json", resolved);
    outputs.emplace_back("errors.csv", errors_csv(merged, c.u));
    if (c.dump_llr) outputs.emplace_back("llr.csv", llr_csv(merged));
    for (const auto& [b, h] : merged.channels) {
        std::ostringstream os;
        write_channel_csv(os, h);
        outputs.emplace_back("channel_B" + std::to_string(b) + "_trial0.csv", os.str());
    }
    for (const auto& [name, bytes] : outputs) {
        write_file(dir / name, bytes);
        man.files.emplace_back(name, hex64(fnv1a64(bytes)));
    }
    man.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(dir / "manifest.txt", man.to_text());
    return man;
}

}  // namespace mcmimo
