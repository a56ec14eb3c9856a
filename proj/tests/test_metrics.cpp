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

#include <doctest.h>

#include <algorithm>

#include "mcmimo/metrics.hpp"
#include "mcmimo/rng.hpp"
#include "support.hpp"

using namespace mcmimo;

namespace {

double mean_power(const ComplexVector& x) {
    double a = 0.0;
    for (const auto& v : x) a += std::norm(v);
    return a / double(x.size());
}

PsdRecord flat_record(std::size_t seg, double in_level, double out_level, std::size_t split) {
    PsdRecord r;
    r.segment = seg;
    r.psd.assign(seg, in_level);
    for (std::size_t i = 0; i < seg; ++i) {
        if (i < split) {
            r.in_band.push_back(i);
        } else {
            r.out_band.push_back(i);
            r.psd[i] = out_level;
        }
    }
    return r;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("PAPR of a constant-envelope frame is 0 dB") {
    ComplexVector x(64);
    for (std::size_t n = 0; n < 64; ++n) x[n] = std::polar(1.0, 2.0 * oracle::pi * 5.0 * n / 64.0);
    for (std::size_t os : {1u, 2u, 4u}) CHECK(std::abs(papr_db(x, os)) < 1e-10);
}

TEST_CASE("PAPR of an impulse is 10 log10 N without oversampling") {
    for (std::size_t n : {16u, 64u, 100u}) {
        ComplexVector x(n);
        x[3] = cd{0.0, 2.0};
        CHECK(papr_db(x, 1) == doctest::Approx(10.0 * std::log10(double(n))).epsilon(1e-12));
    }
}

TEST_CASE("PAPR argument errors") {
    CHECK_THROWS_AS(papr_db(ComplexVector{}, 4), std::invalid_argument);
    CHECK_THROWS_AS(papr_db(ComplexVector(8), 4), std::invalid_argument);
    CHECK_THROWS_AS(papr_db(ComplexVector(8, 1.0), 3), std::invalid_argument);
}

TEST_CASE("property: PAPR is scale invariant and non-negative") {
    oracle::Gen gen(1);
    for (int rep = 0; rep < 50; ++rep) {
        const auto x = gen.cvector(1 + gen.index(200));
        const double c = std::exp(gen.uniform(-5, 5));
        ComplexVector y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = c * x[i];
        for (std::size_t os : {1u, 2u, 4u}) {
            const double p = papr_db(x, os);
            CHECK(p >= -1e-12);
            CHECK(std::abs(papr_db(y, os) - p) < 1e-9);
        }
    }
}

TEST_CASE("oversampling interpolates the band-limited signal") {
    oracle::Gen gen(2);
    const std::size_t n = 32;
    const auto x = gen.cvector(n);
    // oracle: evaluate the trigonometric interpolant at n * 4 points directly
    const auto X = oracle::naive_dft(oracle::cvec(x.begin(), x.end()), -1);
    double peak = 0.0, mean = 0.0;
    for (std::size_t t = 0; t < 4 * n; ++t) {
        oracle::cd acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            const double f = k < (n + 1) / 2 ? double(k) : double(k) - double(n);
            const double ph = 2.0 * oracle::pi * f * double(t) / (4.0 * n);
            acc += X[k] * oracle::cd{std::cos(ph), std::sin(ph)};
        }
        peak = std::max(peak, std::norm(acc));
        mean += std::norm(acc);
    }
    mean /= 4.0 * n;
    CHECK(papr_db(x, 4) == doctest::Approx(10 * std::log10(peak / mean)).epsilon(1e-10));
}

TEST_CASE("CCDF is non-increasing, in [0, 1], and thresholds invert it") {
    oracle::Gen gen(3);
    std::vector<ComplexVector> frames;
    for (int i = 0; i < 500; ++i) frames.push_back(gen.cvector(64));
    const auto r = papr_ccdf(frames, 4);
    const auto curve = r.curve(0.05);
    REQUIRE(!curve.empty());
    CHECK(curve.front().second == 1.0);
    CHECK(curve.back().second == 0.0);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].second <= curve[i - 1].second);
        CHECK(curve[i].second >= 0.0);
    }
    for (double prob : {0.5, 0.1, 0.01, 0.002}) {
        const double t = r.threshold_at(prob);
        CHECK(r.ccdf(t) <= prob);
        // any smaller observed value exceeds the target
        const auto it = std::lower_bound(r.sorted.begin(), r.sorted.end(), t);
        if (it != r.sorted.begin()) CHECK(r.ccdf(*(it - 1)) > prob);
    }
    CHECK_THROWS_AS(r.threshold_at(0.0), std::invalid_argument);
}

TEST_CASE("Welch: white noise is flat within 1 dB over 200 segments") {
    RngStream rng(4, 1);
    const std::size_t seg = 64;
    const auto x = gaussian_noise(seg * 101, 2.0, rng);
    auto r = psd_welch(x, seg, 0.5, WindowKind::hann);
    assign_bands(r, seg, seg, 0.0);
    for (double v : r.psd_db) CHECK(std::abs(v) < 1.0);
}

TEST_CASE("Welch: a tone peaks at its bin") {
    const std::size_t seg = 128, f0 = 37;
    ComplexVector x(seg * 20);
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = std::polar(1.0, 2.0 * oracle::pi * f0 * n / double(seg));
    for (auto w : {WindowKind::hann, WindowKind::rectangular}) {
        const auto r = psd_welch(x, seg, 0.5, w);
        CHECK(std::max_element(r.psd.begin(), r.psd.end()) - r.psd.begin() == std::ptrdiff_t(f0));
        CHECK(r.freq_norm[f0] == doctest::Approx(double(f0) / seg));
    }
}

TEST_CASE("Welch: Parseval with a rectangular window") {
    oracle::Gen gen(5);
    const std::size_t seg = 50;
    const auto v = gen.cvector(seg * 30, 3.0);
    const ComplexVector x(v.begin(), v.end());
    const auto r = psd_welch(x, seg, 0.0, WindowKind::rectangular);
    double s = 0.0;
    for (double p : r.psd) s += p;
    CHECK(std::abs(s / double(seg) / mean_power(x) - 1.0) < 1e-6);
}

TEST_CASE("property: normalized PSD is invariant to input scaling") {
    oracle::Gen gen(6);
    for (int rep = 0; rep < 10; ++rep) {
        const auto v = gen.cvector(512);
        const double c = std::exp(gen.uniform(-4, 4));
        ComplexVector x(v.begin(), v.end()), y(v.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = c * x[i];
        auto a = psd_welch(x, 32, 0.5, WindowKind::hann), b = psd_welch(y, 32, 0.5, WindowKind::hann);
        assign_bands(a, 32, 24, 1.0);
        assign_bands(b, 32, 24, 1.0);
        for (std::size_t i = 0; i < 32; ++i) CHECK(std::abs(a.psd_db[i] - b.psd_db[i]) < 1e-9);
        CHECK(std::abs(oob_ratio(a) - oob_ratio(b)) < 1e-9);
    }
}

TEST_CASE("Welch argument errors") {
    const ComplexVector x(100, 1.0);
    CHECK_THROWS_AS(psd_welch(x, 0, 0.5, WindowKind::hann), std::invalid_argument);
    CHECK_THROWS_AS(psd_welch(x, 101, 0.5, WindowKind::hann), std::invalid_argument);
    CHECK_THROWS_AS(psd_welch(x, 10, 1.0, WindowKind::hann), std::invalid_argument);
    CHECK_THROWS_AS(psd_welch(x, 1, 0.5, WindowKind::hann), std::invalid_argument);
}

TEST_CASE("band assignment for K = 8, K_active = 6 on a 16-bin grid") {
    PsdRecord r;
    r.segment = 16;
    r.psd.assign(16, 1.0);
    for (std::size_t i = 0; i < 16; ++i) r.freq_norm.push_back(i / 16.0);
    assign_bands(r, 8, 6, 1.0);
    // subcarrier units c = i / 2 (wrapped): in-band [-3, 3), OOB c >= 3.5 or c < -4.5
    CHECK(r.in_band == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 10, 11, 12, 13, 14, 15});
    CHECK(r.out_band == std::vector<std::size_t>{7});
    assign_bands(r, 8, 6, 0.0);
    // guard 0: c >= 2.5 or c < -3.5
    CHECK(r.out_band == std::vector<std::size_t>{6, 7, 8});
}

TEST_CASE("OOB ratio of a flat PSD is 0 dB and of a 30 dB step is -30 dB") {
    CHECK(std::abs(oob_ratio(flat_record(32, 2.0, 2.0, 24))) < 1e-12);
    CHECK(std::abs(oob_ratio(flat_record(32, 5.0, 5e-3, 24)) + 30.0) < 1e-12);
    PsdRecord empty = flat_record(8, 1.0, 1.0, 8);
    CHECK_THROWS_AS(oob_ratio(empty), std::invalid_argument);
}

TEST_CASE("complexity: OFDM B = U = 1, K = 4, M = 1 by hand") {
    const auto t = complexity_count("ofdm", 1, 1, 4, 1);
    REQUIRE(t.size() == 4);
    CHECK(t[0].term == "fd_equalization");
    CHECK(t[0].count == 17);  // 4 (1 + 1 + 1/3 + 2) = 17.33
    CHECK(t[1].count == 4);   // FFT_4 = 2 * 2
    CHECK(t[2].count == 0);
    CHECK(t[3].term == "total");
    CHECK(t[3].count == 21);
    CHECK(fft_multiplies(1200) == 600.0 * 11);
    CHECK(fft_multiplies(14) == 28.0);
}

TEST_CASE("complexity ordering at B = 8, U = 8, K = 1200, M = 14") {
    const auto c = [](const char* w) { return complexity_total(w, 8, 8, 1200, 14); };
    CHECK(c("gfdm") > c("fbmc"));
    CHECK(c("fbmc") > c("scfdma"));
    CHECK(c("scfdma") >= c("ofdm"));
}

TEST_CASE("GFDM / OFDM count ratio decreases with B") {
    double prev = 1e300;
    for (std::size_t b : {8u, 16u, 32u, 64u, 128u}) {
        const double r = double(complexity_total("gfdm", b, 8, 1200, 14)) / double(complexity_total("ofdm", b, 8, 1200, 14));
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("property: counts are strictly increasing in every dimension") {
    oracle::Gen gen(7);
    for (const char* w : {"ofdm", "scfdma", "gfdm", "fbmc"})
        for (int rep = 0; rep < 50; ++rep) {
            const std::size_t b = 1 + gen.index(64), u = 1 + gen.index(16), k = 4 + 2 * gen.index(300),
                              m = 1 + gen.index(20);
            const auto base = complexity_total(w, b, u, k, m);
            CHECK(complexity_total(w, b, u, k, m) == base);
            CHECK(complexity_total(w, b + 1, u, k, m) > base);
            CHECK(complexity_total(w, b, u + 1, k, m) > base);
            CHECK(complexity_total(w, b, u, k + 2, m) > base);
            CHECK(complexity_total(w, b, u, k, m + 1) > base);
            for (const auto& t : complexity_count(w, b, u, k, m)) CHECK(t.count < (std::uint64_t{1} << 62));
        }
    CHECK_THROWS_AS(complexity_count("dmt", 1, 1, 4, 1), std::invalid_argument);
}

TEST_CASE("error counters") {
    const std::vector<std::size_t> s{1, 2, 3, 4};
    const std::vector<std::uint8_t> b{0, 1, 1, 0, 1, 0};
    ErrorCounters c;
    accumulate_errors(s, s, b, b, c);
    CHECK(c.symbol_errors == 0);
    CHECK(c.bit_errors == 0);
    CHECK(c.frame_errors == 0);
    auto b2 = b;
    b2[4] = 0;
    accumulate_errors(s, s, b, b2, c);
    CHECK(c.bit_errors == 1);
    CHECK(c.frame_errors == 1);
    CHECK(c.frames == 2);
    CHECK(c.ber() == doctest::Approx(1.0 / 12));
    const std::vector<std::size_t> short_s{1, 2};
    CHECK_THROWS_AS(accumulate_errors(s, short_s, b, b, c), std::invalid_argument);
}

TEST_CASE("property: merge equals counting the concatenated stream") {
    oracle::Gen gen(8);
    for (int rep = 0; rep < 30; ++rep) {
        ErrorCounters all, left, right;
        const int frames = 1 + int(gen.index(20));
        for (int f = 0; f < frames; ++f) {
            std::vector<std::size_t> s(10), d(10);
            std::vector<std::uint8_t> bs(20), bd(20);
            for (std::size_t i = 0; i < 10; ++i) s[i] = gen.index(4), d[i] = gen.uniform() < 0.1 ? gen.index(4) : s[i];
            for (std::size_t i = 0; i < 20; ++i) bs[i] = gen.index(2), bd[i] = gen.uniform() < 0.05 ? 1 - bs[i] : bs[i];
            accumulate_errors(s, d, bs, bd, all);
            accumulate_errors(s, d, bs, bd, f % 2 ? left : right);
        }
        ErrorCounters m1 = left, m2 = right;
        m1.merge(right);
        m2.merge(left);
        CHECK(m1 == all);
        CHECK(m2 == all);
        CHECK(all.symbol_errors <= all.symbols);
        CHECK(all.frame_errors <= all.frames);
    }
}

TEST_CASE("Wilson interval") {
    const auto [lo, hi] = binomial_interval(10, 100);
    // closed form for p = 0.1, n = 100, z = 1.96
    CHECK(lo == doctest::Approx(0.05522).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.17437).epsilon(1e-3));
    const auto z = binomial_interval(0, 1000);
    CHECK(z.first == 0.0);
    CHECK(z.second > 0.0);
    CHECK(z.second < 0.005);
}

}  // TEST_SUITE
