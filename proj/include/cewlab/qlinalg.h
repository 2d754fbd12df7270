// Copyright 2026 The cewlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CEWLAB_QLINALG_H
#define CEWLAB_QLINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cewlab/rng.h"

namespace cewlab {

using cplx = std::complex<double>;

/// Dense row-major complex matrix for the small operators used throughout
/// (dimensions 2 to 36).
class CMat {
   public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols);
    CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    /// Row-wise literal, e.g. CMat{{0, 1}, {1, 0}}.
    CMat(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMat identity(std::size_t n);
    static CMat diagonal(std::span<const double> values);
    /// |v><v|
    static CMat projector(std::span<const cplx> ket);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> data() const noexcept { return data_; }

    CMat adjoint() const;
    CMat transpose() const;
    CMat conj() const;
    cplx trace() const;

    CMat &operator+=(const CMat &other);
    CMat &operator-=(const CMat &other);
    CMat &operator*=(cplx scalar);

    friend CMat operator+(CMat a, const CMat &b) { return a += b; }
    friend CMat operator-(CMat a, const CMat &b) { return a -= b; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }
    friend CMat operator*(const CMat &a, const CMat &b);
    friend bool operator==(const CMat &a, const CMat &b) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Largest elementwise |a - b|; shapes must agree.
double max_abs_diff(const CMat &a, const CMat &b);
/// max |M - M^dagger| <= tol.
bool is_hermitian(const CMat &m, double tol);
/// Tr(a b) without forming the product.
cplx trace_of_product(const CMat &a, const CMat &b);

/// Kronecker product with block (i, j) equal to a(i, j) * b.
CMat kron(const CMat &a, const CMat &b);

/// Pauli matrix sigma_i, i in 0..3 (sigma_0 = identity).
CMat pauli(int i);

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic complex
/// Jacobi sweeps. Throws NotHermitian if |M - M^dagger| exceeds 1e-10 and
/// EigenNoConvergence if 100 sweeps do not bring the off-diagonal Frobenius
/// norm below 1e-12 (relative to max(1, ||M||_F)).
std::vector<double> hermitian_eigenvalues(const CMat &m);

/// Haar-distributed unitary from the QR factorisation of a complex Ginibre
/// matrix, with the phases of diag(R) moved into Q.
CMat haar_unitary(std::size_t dim, Rng &rng);

/// Permutation S with S (|a> (x) |b>) = |b> (x) |a>, mapping a dimA*dimB
/// space with A first to the same space with B first.
CMat swap_operator(std::size_t dim_a, std::size_t dim_b);

}  // namespace cewlab

#endif  // CEWLAB_QLINALG_H
