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

#include "mcmimo/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>

namespace mcmimo {

namespace {

// Largest prime factor handled by the generic radix-p butterfly; beyond this
// the O(n p) butterfly loses to Bluestein.
constexpr std::size_t kMaxDirectRadix = 61;

std::vector<std::size_t> factorize(std::size_t n) {
    std::vector<std::size_t> radices;
    while (n % 4 == 0) {
        radices.push_back(4);
        n /= 4;
    }
    while (n % 2 == 0) {
        radices.push_back(2);
        n /= 2;
    }
    for (std::size_t p = 3; p * p <= n; p += 2) {
        while (n % p == 0) {
            radices.push_back(p);
            n /= p;
        }
    }
    if (n > 1) radices.push_back(n);
    return radices;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("FftPlan: length must be >= 1");
    radices_ = factorize(n);
    if (!radices_.empty() && *std::max_element(radices_.begin(), radices_.end()) > kMaxDirectRadix) {
        bluestein_ = true;
        radices_.clear();
        conv_len_ = next_pow2(2 * n - 1);
        conv_plan_ = std::make_unique<FftPlan>(conv_len_);
        chirp_.resize(n);
        const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
        for (std::size_t j = 0; j < n; ++j) {
            // j^2 mod 2n keeps the phase argument small and exact.
            const std::uint64_t jj = (static_cast<std::uint64_t>(j) * j) % two_n;
            chirp_[j] = std::polar(1.0, -kPi * static_cast<double>(jj) / static_cast<double>(n));
        }
        std::vector<cd> b(conv_len_, cd{0.0, 0.0});
        b[0] = std::conj(chirp_[0]);
        for (std::size_t j = 1; j < n; ++j) {
            b[j] = std::conj(chirp_[j]);
            b[conv_len_ - j] = std::conj(chirp_[j]);
        }
        chirp_spectrum_.resize(conv_len_);
        conv_plan_->forward(b.data(), chirp_spectrum_.data());
        return;
    }
    twiddles_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        twiddles_[i] = std::polar(1.0, -2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
    }
}

FftPlan::~FftPlan() = default;

void FftPlan::forward(const cd* in, cd* out) const {
    if (bluestein_) {
        chirp_z(in, out);
    } else {
        mixed_radix(in, 1, out, n_, 0);
    }
}

void FftPlan::inverse(const cd* in, cd* out) const {
    std::vector<cd> tmp(in, in + n_);
    for (auto& v : tmp) v = std::conj(v);
    forward(tmp.data(), out);
    for (std::size_t i = 0; i < n_; ++i) out[i] = std::conj(out[i]);
}

void FftPlan::mixed_radix(const cd* in, std::size_t stride, cd* out, std::size_t n,
                          std::size_t level) const {
    if (n == 1) {
        out[0] = in[0];
        return;
    }
    const std::size_t p = radices_[level];
    const std::size_t m = n / p;
    for (std::size_t q = 0; q < p; ++q) {
        mixed_radix(in + q * stride, stride * p, out + q * m, m, level + 1);
    }
    const std::size_t step = n_ / n;

    if (p == 2) {
        for (std::size_t k = 0; k < m; ++k) {
            const cd t0 = out[k];
            const cd t1 = out[m + k] * twiddles_[k * step];
            out[k] = t0 + t1;
            out[m + k] = t0 - t1;
        }
        return;
    }
    if (p == 4) {
        for (std::size_t k = 0; k < m; ++k) {
            const cd t0 = out[k];
            const cd t1 = out[m + k] * twiddles_[k * step];
            const cd t2 = out[2 * m + k] * twiddles_[2 * k * step];
            const cd t3 = out[3 * m + k] * twiddles_[3 * k * step];
            const cd s02 = t0 + t2;
            const cd d02 = t0 - t2;
            const cd s13 = t1 + t3;
            // -j * (t1 - t3)
            const cd d13 = t1 - t3;
            const cd rot{d13.imag(), -d13.real()};
            out[k] = s02 + s13;
            out[m + k] = d02 + rot;
            out[2 * m + k] = s02 - s13;
            out[3 * m + k] = d02 - rot;
        }
        return;
    }

    const std::size_t root_step = n_ / p;
    std::array<cd, kMaxDirectRadix> t{};
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t q = 0; q < p; ++q) t[q] = out[q * m + k] * twiddles_[q * k * step];
        for (std::size_t r = 0; r < p; ++r) {
            cd acc = t[0];
            for (std::size_t q = 1; q < p; ++q) acc += t[q] * twiddles_[((q * r) % p) * root_step];
            out[r * m + k] = acc;
        }
    }
}

void FftPlan::chirp_z(const cd* in, cd* out) const {
    std::vector<cd> a(conv_len_, cd{0.0, 0.0});
    for (std::size_t j = 0; j < n_; ++j) a[j] = in[j] * chirp_[j];
    std::vector<cd> spec(conv_len_);
    conv_plan_->forward(a.data(), spec.data());
    for (std::size_t j = 0; j < conv_len_; ++j) spec[j] *= chirp_spectrum_[j];
    conv_plan_->inverse(spec.data(), a.data());
    const double scale = 1.0 / static_cast<double>(conv_len_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = chirp_[k] * a[k] * scale;
}

const FftPlan& fft_plan(std::size_t n) {
    thread_local std::unordered_map<std::size_t, const FftPlan*> local;
    if (auto it = local.find(n); it != local.end()) return *it->second;

    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<FftPlan>> shared;
    std::lock_guard lock(mutex);
    auto& slot = shared[n];
    if (!slot) slot = std::make_unique<FftPlan>(n);
    local.emplace(n, slot.get());
    return *slot;
}

namespace {

void check_length(std::span<const cd> v, std::size_t n, const char* what) {
    if (n == 0 || v.size() != n) {
        throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(n) +
                                    ", got " + std::to_string(v.size()));
    }
}

}  // namespace

ComplexVector dft(std::span<const cd> v, std::size_t n) {
    check_length(v, n, "dft");
    ComplexVector out(n);
    fft_plan(n).forward(v.data(), out.data());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& x : out) x *= scale;
    return out;
}

ComplexVector dft(std::span<const cd> v) { return dft(v, v.size()); }

ComplexVector idft(std::span<const cd> v, std::size_t n) {
    check_length(v, n, "idft");
    ComplexVector out(n);
    fft_plan(n).inverse(v.data(), out.data());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& x : out) x *= scale;
    return out;
}

ComplexVector idft(std::span<const cd> v) { return idft(v, v.size()); }

void dft_inplace(std::span<cd> v) {
    const auto out = dft(std::span<const cd>(v.data(), v.size()));
    std::copy(out.begin(), out.end(), v.begin());
}

void idft_inplace(std::span<cd> v) {
    const auto out = idft(std::span<const cd>(v.data(), v.size()));
    std::copy(out.begin(), out.end(), v.begin());
}

ComplexVector circ_conv(std::span<const cd> a, std::span<const cd> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("circ_conv: operand lengths differ");
    }
    const std::size_t n = a.size();
    ComplexVector out(n, cd{0.0, 0.0});
    for (std::size_t l = 0; l < n; ++l) {
        const cd al = a[l];
        if (al == cd{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < n; ++j) {
            out[j] += al * b[(j + n - l) % n];
        }
    }
    return out;
}

double norm2(std::span<const cd> v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

HermitianMatrix::HermitianMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, cd{0.0, 0.0}) {}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
    HermitianMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.a_[i * dim + i] = 1.0;
    return m;
}

HermitianMatrix HermitianMatrix::regularized_gram(std::span<const cd> h, std::size_t rows,
                                                  std::size_t cols, double n0) {
    if (h.size() != rows * cols) throw std::invalid_argument("regularized_gram: shape mismatch");
    HermitianMatrix g(cols);
    for (std::size_t u = 0; u < cols; ++u) {
        for (std::size_t v = u; v < cols; ++v) {
            cd acc{0.0, 0.0};
            for (std::size_t b = 0; b < rows; ++b) acc += std::conj(h[b * cols + u]) * h[b * cols + v];
            if (u == v) acc = cd{acc.real() + n0, 0.0};
            g.set(u, v, acc);
        }
    }
    return g;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, cd value) {
    if (i == j) {
        a_[i * dim_ + i] = cd{value.real(), 0.0};
        return;
    }
    a_[i * dim_ + j] = value;
    a_[j * dim_ + i] = std::conj(value);
}

ComplexVector HermitianMatrix::multiply(std::span<const cd> x) const {
    if (x.size() != dim_) throw std::invalid_argument("HermitianMatrix::multiply: length mismatch");
    ComplexVector y(dim_, cd{0.0, 0.0});
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) y[i] += a_[i * dim_ + j] * x[j];
    }
    return y;
}

CholeskyFactor::CholeskyFactor(const HermitianMatrix& a) : dim_(a.dim()), l_(a.dim() * a.dim()) {
    const std::size_t n = dim_;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i).real()));
    const double tol = 1e-14 * scale;
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l_[j * n + k]);
        if (!(d > tol) || !std::isfinite(d)) {
            throw SingularMatrixError("Cholesky: non-positive pivot at column " + std::to_string(j));
        }
        const double ljj = std::sqrt(d);
        l_[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cd s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l_[i * n + k] * std::conj(l_[j * n + k]);
            l_[i * n + j] = s / ljj;
        }
    }
}

void CholeskyFactor::solve_into(std::span<const cd> b, std::span<cd> x) const {
    const std::size_t n = dim_;
    if (b.size() != n || x.size() != n) throw std::invalid_argument("CholeskyFactor::solve: length mismatch");
    // L z = b
    for (std::size_t i = 0; i < n; ++i) {
        cd s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l_[i * n + k] * x[k];
        x[i] = s / l_[i * n + i].real();
    }
    // L^H x = z
    for (std::size_t ii = n; ii-- > 0;) {
        cd s = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l_[k * n + ii]) * x[k];
        x[ii] = s / l_[ii * n + ii].real();
    }
}

ComplexVector CholeskyFactor::solve(std::span<const cd> b) const {
    ComplexVector x(dim_);
    solve_into(b, x);
    return x;
}

std::vector<double> CholeskyFactor::inverse_diagonal() const {
    const std::size_t n = dim_;
    std::vector<double> diag(n, 0.0);
    // (A^{-1})_{ii} = || L^{-1} e_i ||^2
    std::vector<cd> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(z.begin(), z.end(), cd{0.0, 0.0});
        double acc = 0.0;
        for (std::size_t r = i; r < n; ++r) {
            cd s = (r == i) ? cd{1.0, 0.0} : cd{0.0, 0.0};
            for (std::size_t k = i; k < r; ++k) s -= l_[r * n + k] * z[k];
            z[r] = s / l_[r * n + r].real();
            acc += std::norm(z[r]);
        }
        diag[i] = acc;
    }
    return diag;
}

ComplexVector hermitian_solve(const HermitianMatrix& a, std::span<const cd> b) {
    if (b.size() != a.dim()) throw std::invalid_argument("hermitian_solve: length mismatch");
    return CholeskyFactor(a).solve(b);
}

}  // namespace mcmimo
