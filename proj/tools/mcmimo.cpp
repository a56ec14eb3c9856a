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

// mcmimo: command line front end for the multi-carrier MU-MIMO link simulator.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure, 1 other.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcmimo/config.hpp"
#include "mcmimo/equalizer.hpp"
#include "mcmimo/fbmc.hpp"
#include "mcmimo/gfdm.hpp"
#include "mcmimo/simulator.hpp"

using namespace mcmimo;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t trials = 0;
    std::size_t threads = 0;
    bool threads_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "JSON configuration file (defaults to the desk-scale preset)");
    cmd->add_option("--out", o.out_dir, "output directory (overrides the config)");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&o](const std::uint64_t& v) { o.seed = v, o.seed_set = true; }, "master seed");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials per point (or frames for papr)");
    cmd->add_option_function<std::size_t>(
        "--threads", [&o](const std::size_t& v) { o.threads = v, o.threads_set = true; },
        "worker threads, 0 = all cores");
}

SimConfig build_config(const CommonOptions& o, bool trials_are_frames) {
    SimConfig c = o.config_path.empty() ? parse_config("{}") : load_config(o.config_path);
    if (!o.out_dir.empty()) c.out_dir = o.out_dir;
    if (o.seed_set) c.master_seed = o.seed;
    if (o.trials != 0) {
        if (trials_are_frames) {
            c.papr.frames = o.trials;
        } else {
            c.trials = o.trials;
        }
    }
    if (o.threads_set) c.threads = o.threads;
    validate_config(c);
    return c;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

int report(const RunManifest& m) {
    std::cout << m.to_text();
    return m.failures.empty() ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-carrier waveform comparison for large-scale MU-MIMO uplink"};
    app.require_subcommand(1);
    const std::string command = join_args(argc, argv);

    CommonOptions sim_o, papr_o, psd_o, cx_o, sweep_o;
    auto* sim = app.add_subcommand("simulate", "link-level error rates plus any metrics enabled in the config");
    add_common(sim, sim_o);
    auto* papr = app.add_subcommand("papr", "PAPR CCDF per waveform");
    add_common(papr, papr_o);
    auto* psd = app.add_subcommand("psd", "Welch PSD and out-of-band ratio per waveform");
    add_common(psd, psd_o);
    auto* cx = app.add_subcommand("complexity", "analytic complex-multiplication counts");
    add_common(cx, cx_o);

    auto* sweep = app.add_subcommand("sweep", "error rates over an SNR or antenna axis");
    add_common(sweep, sweep_o);
    std::string axis;
    std::vector<double> values;
    sweep->add_option("--axis", axis, "snr or antennas")->required()->check(CLI::IsMember({"snr", "antennas"}));
    sweep->add_option("--values", values, "axis values")->required()->expected(1, -1);

    auto* proto = app.add_subcommand("prototype", "export prototype filter taps as CSV");
    std::string proto_kind = "gfdm";
    std::size_t proto_k = 64, proto_m = 14;
    double proto_rolloff = 0.25;
    std::string proto_out;
    proto->add_option("--type", proto_kind, "gfdm or fbmc")->check(CLI::IsMember({"gfdm", "fbmc"}));
    proto->add_option("--K", proto_k, "subcarriers");
    proto->add_option("--M", proto_m, "subsymbols (GFDM)");
    proto->add_option("--rolloff", proto_rolloff, "RRC roll-off (GFDM)");
    proto->add_option("--out", proto_out, "CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (sim->parsed()) {
            const SimConfig c = build_config(sim_o, false);
            ExperimentSet which{c.metrics.errors, c.metrics.papr, c.metrics.psd, c.metrics.complexity};
            return report(run_experiments(c, which, command));
        }
        if (papr->parsed()) return report(run_experiments(build_config(papr_o, true), {false, true, false, false}, command));
        if (psd->parsed()) return report(run_experiments(build_config(psd_o, false), {false, false, true, false}, command));
        if (cx->parsed()) return report(run_experiments(build_config(cx_o, false), {false, false, false, true}, command));
        if (sweep->parsed()) {
            const SimConfig c = build_config(sweep_o, false);
            return report(run_sweep(c, axis == "snr" ? SweepAxis::snr : SweepAxis::antennas, values, command));
        }
        if (proto->parsed()) {
            std::vector<double> taps;
            if (proto_kind == "gfdm") {
                taps = rrc_prototype(proto_k, proto_m, proto_rolloff).g;
            } else {
                taps = phydyas_prototype(proto_k).p;
            }
            if (proto_out.empty()) {
                write_taps_csv(std::cout, taps);
            } else {
                std::ofstream out(proto_out);
                if (!out) throw std::runtime_error("cannot write '" + proto_out + "'");
                write_taps_csv(out, taps);
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
