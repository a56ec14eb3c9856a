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

#ifndef MCMIMO_NUMERICS_HPP
#define MCMIMO_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcmimo {

using cd = std::complex<double>;
using ComplexVector = std::vector<cd>;

constexpr double kPi = 3.14159265358979323846;

/// Base class for failures of the numerical pipeline (as opposed to bad input).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/**
 * Unnormalized length-n DFT plan.
 *
 * Mixed-radix decimation in time for lengths whose prime factors are small,
 * Bluestein (chirp-z) through a power-of-two plan otherwise. Plans are
 * immutable after construction and can be shared between threads.
 */
class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    std::size_t size() const { return n_; }
    bool uses_bluestein() const { return bluestein_; }

    /// out_k = sum_j in_j exp(-+2 pi i jk/n), no scaling. `in` and `out` must not alias.
    void forward(const cd* in, cd* out) const;
    void inverse(const cd* in, cd* out) const;

private:
    void mixed_radix(const cd* in, std::size_t stride, cd* out, std::size_t n,
                     std::size_t level) const;
    void chirp_z(const cd* in, cd* out) const;

    std::size_t n_;
    std::vector<std::size_t> radices_;
    std::vector<cd> twiddles_;

    bool bluestein_ = false;
    std::size_t conv_len_ = 0;
    std::vector<cd> chirp_;
    std::vector<cd> chirp_spectrum_;
    std::unique_ptr<FftPlan> conv_plan_;
};

/// Cached plan for length n (thread safe, lives for the program lifetime).
const FftPlan& fft_plan(std::size_t n);

/// Unitary DFT: out_k = n^{-1/2} sum_j v_j e^{-2 pi i jk/n}.
ComplexVector dft(std::span<const cd> v, std::size_t n);
ComplexVector dft(std::span<const cd> v);
/// Unitary inverse DFT.
ComplexVector idft(std::span<const cd> v, std::size_t n);
ComplexVector idft(std::span<const cd> v);

/// In-place unitary transforms for hot loops.
void dft_inplace(std::span<cd> v);
void idft_inplace(std::span<cd> v);

/// out_j = sum_l a_l b_{(j-l) mod n}.
ComplexVector circ_conv(std::span<const cd> a, std::span<const cd> b);

double norm2(std::span<const cd> v);

/// Dense Hermitian matrix, row-major; writes through set() keep a(i,j) = conj(a(j,i)).
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t dim);

    /// A = H^H H + n0 I for a row-major B x U matrix H.
    static HermitianMatrix regularized_gram(std::span<const cd> h, std::size_t rows,
                                            std::size_t cols, double n0);
    static HermitianMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cd operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    void set(std::size_t i, std::size_t j, cd value);

    ComplexVector multiply(std::span<const cd> x) const;

private:
    std::size_t dim_ = 0;
    std::vector<cd> a_;
};

/// A = L L^H with real positive diagonal on L.
class CholeskyFactor {
public:
    /// Throws SingularMatrixError on a non-positive pivot.
    explicit CholeskyFactor(const HermitianMatrix& a);

    std::size_t dim() const { return dim_; }
    ComplexVector solve(std::span<const cd> b) const;
    void solve_into(std::span<const cd> b, std::span<cd> x) const;
    /// Diagonal of A^{-1}, one forward/back solve per column.
    std::vector<double> inverse_diagonal() const;

private:
    std::size_t dim_;
    std::vector<cd> l_;
};

/// x = A^{-1} b for Hermitian positive-definite A.
ComplexVector hermitian_solve(const HermitianMatrix& a, std::span<const cd> b);

}  // namespace mcmimo

#endif  // MCMIMO_NUMERICS_HPP
