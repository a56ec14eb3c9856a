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

// Test-only oracles: brute-force transforms and dense linear algebra that
// share no code with the library.

#ifndef MCMIMO_TESTS_SUPPORT_HPP
#define MCMIMO_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using cvec = std::vector<cd>;
constexpr double pi = 3.14159265358979323846;

/// Deterministic test generator (std distributions are fine here: only self-consistency matters).
struct Gen {
    std::mt19937_64 eng;
    explicit Gen(std::uint64_t seed) : eng(seed) {}
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng); }
    double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(eng); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng); }
    cd cgauss(double var = 1.0) {
        const double s = std::sqrt(var / 2.0);
        return {s * normal(), s * normal()};
    }
    cvec cvector(std::size_t n, double var = 1.0) {
        cvec v(n);
        for (auto& x : v) x = cgauss(var);
        return v;
    }
};

/// sum_j v_j exp(sign * 2 pi i jk / n) / sqrt(n)
inline cvec naive_dft(const cvec& v, int sign) {
    const std::size_t n = v.size();
    cvec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double ph = sign * 2.0 * pi * double((j * k) % n) / double(n);
            acc += v[j] * cd{std::cos(ph), std::sin(ph)};
        }
        out[k] = acc / std::sqrt(double(n));
    }
    return out;
}

inline double norm(const cvec& v) {
    double a = 0.0;
    for (auto x : v) a += std::norm(x);
    return std::sqrt(a);
}

inline double max_abs_diff(const cvec& a, const cvec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double rel_err(const cvec& a, const cvec& b) {
    cvec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double nb = norm(b);
    return nb > 0 ? norm(d) / nb : norm(d);
}

/// Dense row-major complex matrix.
struct Mat {
    std::size_t r = 0, c = 0;
    cvec a;
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : r(rows), c(cols), a(rows * cols) {}
    cd& operator()(std::size_t i, std::size_t j) { return a[i * c + j]; }
    cd operator()(std::size_t i, std::size_t j) const { return a[i * c + j]; }

    Mat h() const {
        Mat t(c, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) t(j, i) = std::conj((*this)(i, j));
        return t;
    }
    Mat operator*(const Mat& o) const {
        Mat p(r, o.c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < c; ++k) {
                const cd x = (*this)(i, k);
                for (std::size_t j = 0; j < o.c; ++j) p(i, j) += x * o(k, j);
            }
        return p;
    }
    cvec operator*(const cvec& v) const {
        cvec y(r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) y[i] += (*this)(i, j) * v[j];
        return y;
    }
    static Mat eye(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

/// Gauss-Jordan inverse with partial pivoting.
inline Mat inverse(Mat m) {
    if (m.r != m.c) throw std::invalid_argument("inverse: not square");
    const std::size_t n = m.r;
    Mat inv = Mat::eye(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(m(i, col)) > std::abs(m(piv, col))) piv = i;
        if (std::abs(m(piv, col)) < 1e-300) throw std::runtime_error("inverse: singular");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(m(col, j), m(piv, j));
            std::swap(inv(col, j), inv(piv, j));
        }
        const cd d = m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const cd f = m(i, col);
            if (f == cd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Moore-Penrose pseudo-inverse of a full-column-rank matrix: (A^H A)^{-1} A^H.
inline Mat pinv(const Mat& a) {
    const Mat ah = a.h();
    return inverse(ah * a) * ah;
}

}  // namespace oracle

#endif  // MCMIMO_TESTS_SUPPORT_HPP
