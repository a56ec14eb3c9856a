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

#include "mcmimo/equalizer.hpp"
#include "support.hpp"

using namespace mcmimo;

namespace {

ChannelRealization channel_from(std::size_t b, std::size_t u, const std::vector<cd>& h) {
    ChannelRealization c;
    c.b = b, c.u = u, c.k = 1, c.blocks = 1;
    c.h = h;
    return c;
}

std::vector<FdBlocks> single_block(const std::vector<cd>& s) {
    std::vector<FdBlocks> out;
    for (const auto& x : s) {
        FdBlocks f(1, 1);
        f.blocks[0][0] = x;
        out.push_back(f);
    }
    return out;
}

}  // namespace

TEST_SUITE("equalizer-fd") {

TEST_CASE("scalar closed form") {
    const cd h{0.8, -0.6}, s{0.3, 0.4};
    const double n0 = 0.25;
    RngStream r(1, 1);
    const auto ch = channel_from(1, 1, {h});
    const auto y = apply_channel(single_block({s}), ch, 0.0, r);
    const auto eq = mmse_equalize(y, ch, n0);
    const cd biased = std::conj(h) * (h * s) / (std::norm(h) + n0);
    const double mu = std::norm(h) / (std::norm(h) + n0);
    CHECK(std::abs(eq.users[0].s_hat.blocks[0][0] * mu - biased) < 1e-14);
    CHECK(std::abs(eq.users[0].s_hat.blocks[0][0] - s) < 1e-14);
    CHECK(std::abs(eq.users[0].npi[0][0] - n0 / std::norm(h)) < 1e-14);
}

TEST_CASE("property: unit gain on the wanted stream") {
    oracle::Gen gen(2);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t u = 1 + gen.index(8), b = u + gen.index(8);
        const double n0 = std::exp(gen.uniform(-5.0, 1.0));
        const auto ch = channel_from(b, u, gen.cvector(b * u));
        const std::size_t want = gen.index(u);
        std::vector<cd> s(u, cd{0.0, 0.0});
        s[want] = gen.cgauss();
        RngStream r(3, rep);
        const auto eq = mmse_equalize(apply_channel(single_block(s), ch, 0.0, r), ch, n0);
        CHECK(std::abs(eq.users[want].s_hat.blocks[0][0] - s[want]) < 1e-9);
    }
}

TEST_CASE("ZF limit: N0 = 1e-12, B = 8, U = 4") {
    oracle::Gen gen(4);
    const auto ch = channel_from(8, 4, gen.cvector(32));
    const auto s = gen.cvector(4);
    RngStream r(5, 1);
    const auto eq = mmse_equalize(apply_channel(single_block(s), ch, 0.0, r), ch, 1e-12);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(eq.users[i].s_hat.blocks[0][0] - s[i]) < 1e-6);
    const auto zf = mmse_equalize(apply_channel(single_block(s), ch, 0.0, r), ch, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(zf.users[i].s_hat.blocks[0][0] - s[i]) < 1e-9);
        CHECK(zf.users[i].npi[0][0] == 0.0);
    }
}

TEST_CASE("matches a dense-algebra oracle for raw output, bias and variance") {
    oracle::Gen gen(6);
    const std::size_t B = 6, U = 3;
    const double n0 = 0.3;
    oracle::Mat H(B, U);
    H.a = gen.cvector(B * U);
    const auto ch = channel_from(B, U, H.a);
    const auto s = gen.cvector(U);
    RngStream r(7, 1);
    const auto y = apply_channel(single_block(s), ch, n0, r);
    const auto eq = mmse_equalize(y, ch, n0);

    oracle::Mat A = H.h() * H;
    const oracle::Mat G = A;
    for (std::size_t i = 0; i < U; ++i) A(i, i) += n0;
    const oracle::Mat Ai = oracle::inverse(A);
    oracle::cvec yv(y.y.begin(), y.y.end());
    const auto raw = Ai * (H.h() * yv);
    const oracle::Mat AiG = Ai * G;
    for (std::size_t u = 0; u < U; ++u) {
        const double mu = AiG(u, u).real();
        CHECK(std::abs(eq.users[u].s_hat.blocks[0][0] - raw[u] / mu) < 1e-12);
        CHECK(std::abs(eq.users[u].npi[0][0] - (1.0 - mu) / mu) < 1e-12);
    }
}

TEST_CASE("orthogonal columns reduce to matched filter plus scaling") {
    // B = U = 2, H = diag(2, 3j) rotated by a unitary: columns stay orthogonal
    const double c = std::cos(0.3), s = std::sin(0.3);
    const std::vector<cd> h{cd{2 * c, 0}, cd{0, -3 * s}, cd{2 * s, 0}, cd{0, 3 * c}};
    const auto ch = channel_from(2, 2, h);
    const std::vector<cd> x{cd{0.5, -0.5}, cd{-1.0, 0.25}};
    const double n0 = 0.7;
    RngStream r(8, 1);
    const auto y = apply_channel(single_block(x), ch, n0, r);
    const auto eq = mmse_equalize(y, ch, n0);
    for (std::size_t u = 0; u < 2; ++u) {
        cd mf{0.0, 0.0};
        double g = 0.0;
        for (std::size_t b = 0; b < 2; ++b) {
            mf += std::conj(h[b * 2 + u]) * y.y[b];
            g += std::norm(h[b * 2 + u]);
        }
        CHECK(std::abs(eq.users[u].s_hat.blocks[0][0] - mf / g) < 1e-12);
        CHECK(std::abs(eq.users[u].npi[0][0] - n0 / g) < 1e-12);
    }
}

TEST_CASE("per-stream variance matches Monte Carlo (B = 32, U = 8, N0 = 0.1)") {
    const std::size_t B = 32, U = 8;
    const double n0 = 0.1;
    RngStream rc(9, 1);
    const auto ch = generate_channel(B, U, 1, 1, ChannelSpec{}, rc);
    const std::size_t trials = 20000;
    std::vector<double> err(U, 0.0);
    std::vector<double> npi(U, 0.0);
    const auto qpsk = Constellation::qam(4);
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rd(10, t);
        std::vector<cd> s(U);
        for (auto& x : s) x = qpsk.points()[rd.next_u64() & 3U];
        const auto eq = mmse_equalize(apply_channel(single_block(s), ch, n0, rd), ch, n0);
        for (std::size_t u = 0; u < U; ++u) {
            err[u] += std::norm(eq.users[u].s_hat.blocks[0][0] - s[u]);
            npi[u] = eq.users[u].npi[0][0];
        }
    }
    for (std::size_t u = 0; u < U; ++u) {
        CAPTURE(u);
        // 2e4 samples: relative standard error of a variance estimate ~ 1%
        CHECK(std::abs(err[u] / double(trials) / npi[u] - 1.0) < 0.05);
    }
}

TEST_CASE("channel hardening: mean per-stream variance does not grow with B") {
    const std::size_t U = 8, K = 32;
    const double n0 = 0.1;
    double prev = 1e300;
    for (std::size_t B : {8u, 16u, 32u, 64u, 128u}) {
        double acc = 0.0;
        std::size_t n = 0;
        for (std::size_t rep = 0; rep < 40; ++rep) {
            RngStream r(11, stream_id({B, rep}));
            const auto ch = generate_channel(B, U, K, 1, ChannelSpec{}, r);
            ReceivedFrame y;
            y.b = B, y.k = K, y.blocks = 1, y.n0 = n0;
            y.y.assign(K * B, cd{0.0, 0.0});
            const auto eq = mmse_equalize(y, ch, n0);
            for (const auto& e : eq.users) {
                for (double v : e.npi[0]) acc += v;
                n += K;
            }
        }
        const double mean = acc / double(n);
        CAPTURE(B);
        CHECK(mean <= prev);
        prev = mean;
    }
}

TEST_CASE("rank deficiency names the subcarrier and block") {
    ChannelRealization ch;
    ch.b = 2, ch.u = 2, ch.k = 3, ch.blocks = 1;
    ch.h.assign(12, cd{1.0, 0.0});
    for (std::size_t k = 0; k < 2; ++k) ch.h[k * 4 + 1] = 0.0, ch.h[k * 4 + 2] = 0.0;  // diag on k = 0, 1
    ReceivedFrame y;
    y.b = 2, y.k = 3, y.blocks = 1;
    y.y.assign(6, cd{0.0, 0.0});
    try {
        mmse_equalize(y, ch, 0.0);
        FAIL("expected RankDeficiencyError");
    } catch (const RankDeficiencyError& e) {
        CHECK(e.subcarrier() == 2);
        CHECK(e.block() == 0);
    }
    CHECK_NOTHROW(mmse_equalize(y, ch, 0.1));
}

TEST_CASE("TD aggregation") {
    UserEstimate e;
    e.s_hat = FdBlocks(2, 1);
    e.npi = {{0.2, 0.4}};
    CHECK(std::abs(aggregate_td_npi(e, {0, 1})[0] - 0.3) < 1e-15);
    CHECK(std::abs(frame_td_npi(e) - 0.3) < 1e-15);
    e.npi = {{0.5, 0.5}, {0.5, 0.5}};
    CHECK(frame_td_npi(e) == 0.5);
    CHECK(aggregate_td_npi(e, {1}) == std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(aggregate_td_npi(e, {}), std::invalid_argument);
}

TEST_CASE("LLRs from aggregated variances are finite and sign-correct on noiseless input") {
    const auto con = Constellation::qam(16);
    const std::size_t B = 8, U = 4, K = 16;
    RngStream rc(12, 1);
    const auto ch = generate_channel(B, U, K, 1, ChannelSpec{}, rc);
    std::vector<FdBlocks> tx(U, FdBlocks(K, 1));
    std::vector<std::vector<std::size_t>> labels(U, std::vector<std::size_t>(K));
    RngStream rd(13, 1);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t k = 0; k < K; ++k) {
            labels[u][k] = rd.next_u64() % 16;
            tx[u].blocks[0][k] = con.points()[labels[u][k]];
        }
    const double n0 = 0.01;
    const auto eq = mmse_equalize(apply_channel(tx, ch, 0.0, rd), ch, n0);
    for (std::size_t u = 0; u < U; ++u) {
        const double v2 = frame_td_npi(eq.users[u]);
        for (std::size_t k = 0; k < K; ++k) {
            const auto l = llr_maxlog(eq.users[u].s_hat.blocks[0][k], v2, con);
            for (std::size_t j = 0; j < 4; ++j) {
                CHECK(std::isfinite(l[j]));
                CHECK((l[j] > 0) == (con.label_bit(labels[u][k], j) == 0));
            }
        }
    }
}

}  // TEST_SUITE
