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

#include "mcmimo/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mcmimo/constellation.hpp"
#include "mcmimo/gfdm.hpp"

namespace mcmimo {

using nlohmann::json;

Waveform waveform_from_name(const std::string& name) {
    if (name == "ofdm") return Waveform::ofdm;
    if (name == "scfdma" || name == "sc-fdma") return Waveform::scfdma;
    if (name == "gfdm") return Waveform::gfdm;
    if (name == "fbmc") return Waveform::fbmc;
    throw ConfigError("unknown waveform '" + name + "'");
}

std::string waveform_name(Waveform w) {
    switch (w) {
        case Waveform::ofdm: return "ofdm";
        case Waveform::scfdma: return "scfdma";
        case Waveform::gfdm: return "gfdm";
        case Waveform::fbmc: return "fbmc";
    }
    return "?";
}

namespace {

const std::vector<std::string> kTopLevelKeys = {
    "schema_version", "waveforms", "K", "M", "M_pam", "k_active", "constellation", "rolloff", "B", "U",
    "channel", "snr_db", "n0", "trials", "master_seed", "threads", "metrics", "papr", "psd", "complexity",
    "out", "dump_llr", "dump_llr_trials", "dump_channel"};

template <typename T>
void read(const json& j, const char* key, T& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == it.key();
        if (!ok) throw ConfigError("unknown config field '" + where + it.key() + "'");
    }
}

std::size_t read_size(const json& j, const char* key, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(std::string("config field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

std::vector<NoisePoint> noise_points(const SimConfig& c) {
    std::vector<NoisePoint> out;
    if (!c.n0.empty()) {
        for (double n0 : c.n0) {
            out.push_back({n0 > 0.0 ? -10.0 * std::log10(n0) : std::numeric_limits<double>::infinity(), n0});
        }
    } else {
        for (double s : c.snr_db) out.push_back({s, std::pow(10.0, -s / 10.0)});
    }
    return out;
}

void resolve_config(SimConfig& c) {
    if (c.m_pam == 0) c.m_pam = 2 * c.m;
    if (c.k_active == 0) c.k_active = c.k;
    if (c.psd.k_active == 0) c.psd.k_active = (c.k_active == c.k) ? (3 * c.k / 4) & ~std::size_t{1} : c.k_active;
    if (c.psd.segment == 0) c.psd.segment = 8 * c.k;
    if (c.complexity.b_values.empty()) c.complexity.b_values = c.b_values;
    if (c.complexity.k == 0) c.complexity.k = c.k;
    if (c.complexity.m == 0) c.complexity.m = c.m;
}

void validate_config(const SimConfig& c) {
    auto fail = [](const std::string& msg) { throw ConfigError("invalid config: " + msg); };
    if (c.schema_version != 1) fail("schema_version must be 1");
    if (c.waveforms.empty()) fail("waveforms is empty");
    if (c.k < 2) fail("K must be >= 2");
    if (c.m < 1) fail("M must be >= 1");
    if (c.k_active < 2 || c.k_active > c.k) fail("k_active must be in [2, K]");
    if (c.k_active != c.k && c.k_active % 2 != 0) fail("k_active must be even");
    if (c.u < 1) fail("U must be >= 1");
    if (c.b_values.empty()) fail("B is empty");
    if (c.trials < 1) fail("trials must be >= 1");
    if (c.snr_db.empty() && c.n0.empty()) fail("one of snr_db or n0 is required");
    for (double n0 : c.n0) {
        if (!(n0 >= 0.0) || !std::isfinite(n0)) fail("n0 values must be finite and >= 0");
    }
    for (double s : c.snr_db) {
        if (!std::isfinite(s)) fail("snr_db values must be finite");
    }
    const auto pts = noise_points(c);
    for (std::size_t b : c.b_values) {
        if (b < 1) fail("B values must be >= 1");
        for (const auto& p : pts) {
            if (c.u > b && p.n0 == 0.0) fail("U > B with N0 = 0 leaves the Gram matrix singular");
        }
        if (c.u > b) fail("U > B: the channel model needs at least as many antennas as users");
        if (c.channel.model == ChannelModel::identity && b != c.u) fail("identity channel needs B == U");
    }
    if (c.channel.model == ChannelModel::tapped_delay_line && (c.channel.taps < 1 || !(c.channel.decay_taps > 0.0))) {
        fail("tapped-delay-line needs taps >= 1 and decay_taps > 0");
    }
    Constellation con = [&] {
        try {
            return Constellation::from_name(c.constellation);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("invalid config: ") + e.what());
        }
    }();
    if (!(c.rolloff >= 0.0 && c.rolloff <= 1.0)) fail("rolloff must be in [0, 1]");
    for (Waveform w : c.waveforms) {
        if (w == Waveform::fbmc) {
            if (c.k < 4 || c.k % 2 != 0) fail("FBMC needs an even K >= 4");
            if (con.kind() != ModulationKind::qam) fail("FBMC payload matching needs a square QAM constellation");
            if (c.m_pam < 1) fail("M_pam must be >= 1");
        }
        if (w == Waveform::gfdm) {
            if (c.m < 2) fail("GFDM needs M >= 2");
            try {
                rrc_prototype(c.k, c.m, c.rolloff);
            } catch (const std::invalid_argument& e) {
                fail(std::string("GFDM prototype rejected: ") + e.what());
            }
        }
    }
    if (c.papr.oversample != 1 && c.papr.oversample != 2 && c.papr.oversample != 4) fail("papr.oversample must be 1, 2 or 4");
    if (c.papr.frames < 1) fail("papr.frames must be >= 1");
    if (!(c.papr.step_db > 0.0)) fail("papr.step_db must be > 0");
    if (c.psd.frames < 1) fail("psd.frames must be >= 1");
    if (c.psd.k_active < 2 || c.psd.k_active > c.k || c.psd.k_active % 2 != 0) fail("psd.k_active must be even and in [2, K]");
    if (!(c.psd.overlap >= 0.0 && c.psd.overlap < 1.0)) fail("psd.overlap must be in [0, 1)");
    if (c.psd.segment < 2) fail("psd.segment must be >= 2");
    if (!(c.psd.guard >= 0.0)) fail("psd.guard must be >= 0");
    if (c.complexity.b_values.empty()) fail("complexity.B is empty");
    if (c.out_dir.empty()) fail("out must not be empty");
}

SimConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, kTopLevelKeys, "");

    SimConfig c;
    read(j, "schema_version", c.schema_version);
    if (j.contains("waveforms")) {
        std::vector<std::string> names;
        read(j, "waveforms", names);
        c.waveforms.clear();
        for (const auto& n : names) c.waveforms.push_back(waveform_from_name(n));
    }
    c.k = read_size(j, "K", c.k);
    c.m = read_size(j, "M", c.m);
    c.m_pam = read_size(j, "M_pam", c.m_pam);
    c.k_active = read_size(j, "k_active", c.k_active);
    read(j, "constellation", c.constellation);
    read(j, "rolloff", c.rolloff);
    if (j.contains("B")) {
        if (j.at("B").is_array()) {
            read(j, "B", c.b_values);
        } else {
            c.b_values = {read_size(j, "B", 0)};
        }
    }
    c.u = read_size(j, "U", c.u);
    if (j.contains("channel")) {
        const json& ch = j.at("channel");
        if (!ch.is_object()) throw ConfigError("config field 'channel' must be an object");
        reject_unknown(ch, {"model", "coherence", "taps", "decay_taps"}, "channel.");
        std::string model = channel_model_name(c.channel.model);
        std::string coh = coherence_name(c.channel.coherence);
        read(ch, "model", model);
        read(ch, "coherence", coh);
        try {
            c.channel.model = channel_model_from_name(model);
            c.channel.coherence = coherence_from_name(coh);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("invalid config: ") + e.what());
        }
        c.channel.taps = read_size(ch, "taps", c.channel.taps);
        read(ch, "decay_taps", c.channel.decay_taps);
    }
    if (j.contains("n0")) {
        read(j, "n0", c.n0);
        c.snr_db.clear();
        if (j.contains("snr_db")) throw ConfigError("give either snr_db or n0, not both");
    }
    read(j, "snr_db", c.snr_db);
    c.trials = read_size(j, "trials", c.trials);
    read(j, "master_seed", c.master_seed);
    c.threads = read_size(j, "threads", c.threads);
    if (j.contains("metrics")) {
        const json& mt = j.at("metrics");
        reject_unknown(mt, {"errors", "papr", "psd", "complexity"}, "metrics.");
        read(mt, "errors", c.metrics.errors);
        read(mt, "papr", c.metrics.papr);
        read(mt, "psd", c.metrics.psd);
        read(mt, "complexity", c.metrics.complexity);
    }
    if (j.contains("papr")) {
        const json& p = j.at("papr");
        reject_unknown(p, {"frames", "oversample", "step_db", "dump_frames"}, "papr.");
        c.papr.frames = read_size(p, "frames", c.papr.frames);
        c.papr.oversample = read_size(p, "oversample", c.papr.oversample);
        read(p, "step_db", c.papr.step_db);
        read(p, "dump_frames", c.papr.dump_frames);
    }
    if (j.contains("psd")) {
        const json& p = j.at("psd");
        reject_unknown(p, {"frames", "k_active", "segment", "overlap", "window", "guard"}, "psd.");
        c.psd.frames = read_size(p, "frames", c.psd.frames);
        c.psd.k_active = read_size(p, "k_active", c.psd.k_active);
        c.psd.segment = read_size(p, "segment", c.psd.segment);
        read(p, "overlap", c.psd.overlap);
        read(p, "guard", c.psd.guard);
        if (p.contains("window")) {
            std::string w;
            read(p, "window", w);
            try {
                c.psd.window = window_from_name(w);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("invalid config: ") + e.what());
            }
        }
    }
    if (j.contains("complexity")) {
        const json& p = j.at("complexity");
        reject_unknown(p, {"B", "K", "M"}, "complexity.");
        read(p, "B", c.complexity.b_values);
        c.complexity.k = read_size(p, "K", c.complexity.k);
        c.complexity.m = read_size(p, "M", c.complexity.m);
    }
    read(j, "out", c.out_dir);
    read(j, "dump_llr", c.dump_llr);
    c.dump_llr_trials = read_size(j, "dump_llr_trials", c.dump_llr_trials);
    read(j, "dump_channel", c.dump_channel);

    resolve_config(c);
    validate_config(c);
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const SimConfig& c) {
    json j;
    j["schema_version"] = c.schema_version;
    std::vector<std::string> wf;
    for (Waveform w : c.waveforms) wf.push_back(waveform_name(w));
    j["waveforms"] = wf;
    j["K"] = c.k;
    j["M"] = c.m;
    j["M_pam"] = c.m_pam;
    j["k_active"] = c.k_active;
    j["constellation"] = c.constellation;
    j["rolloff"] = c.rolloff;
    j["B"] = c.b_values;
    j["U"] = c.u;
    j["channel"] = {{"model", channel_model_name(c.channel.model)},
                    {"coherence", coherence_name(c.channel.coherence)},
                    {"taps", c.channel.taps},
                    {"decay_taps", c.channel.decay_taps}};
    if (!c.n0.empty()) {
        j["n0"] = c.n0;
    } else {
        j["snr_db"] = c.snr_db;
    }
    j["trials"] = c.trials;
    j["master_seed"] = c.master_seed;
    j["metrics"] = {{"errors", c.metrics.errors},
                    {"papr", c.metrics.papr},
                    {"psd", c.metrics.psd},
                    {"complexity", c.metrics.complexity}};
    j["papr"] = {{"frames", c.papr.frames},
                 {"oversample", c.papr.oversample},
                 {"step_db", c.papr.step_db},
                 {"dump_frames", c.papr.dump_frames}};
    j["psd"] = {{"frames", c.psd.frames},
                {"k_active", c.psd.k_active},
                {"segment", c.psd.segment},
                {"overlap", c.psd.overlap},
                {"window", window_name(c.psd.window)},
                {"guard", c.psd.guard}};
    j["complexity"] = {{"B", c.complexity.b_values}, {"K", c.complexity.k}, {"M", c.complexity.m}};
    j["out"] = c.out_dir;
    j["dump_llr"] = c.dump_llr;
    j["dump_llr_trials"] = c.dump_llr_trials;
    j["dump_channel"] = c.dump_channel;
    return j.dump(2) + "\n";
}

}  // namespace mcmimo
