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

#include "cewlab/qlinalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cewlab/error.h"

namespace cewlab {

CMat::CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMat::CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::DimensionMismatch, "CMat: entry count " + std::to_string(data_.size()) +
                                                      " does not match " + std::to_string(rows_) + "x" +
                                                      std::to_string(cols_));
    }
}

CMat::CMat(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "CMat: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::diagonal(std::span<const double> values) {
    CMat m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

CMat CMat::projector(std::span<const cplx> ket) {
    CMat m(ket.size(), ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
    return m;
}

CMat CMat::adjoint() const {
    CMat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMat CMat::transpose() const {
    CMat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

CMat CMat::conj() const {
    CMat m = *this;
    for (auto &v : m.data_) v = std::conj(v);
    return m;
}

cplx CMat::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

CMat &CMat::operator+=(const CMat &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::DimensionMismatch, "CMat +: shape");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMat &CMat::operator-=(const CMat &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::DimensionMismatch, "CMat -: shape");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMat &CMat::operator*=(cplx scalar) {
    for (auto &v : data_) v *= scalar;
    return *this;
}

CMat operator*(const CMat &a, const CMat &b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "CMat *: inner dimensions differ");
    CMat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

double max_abs_diff(const CMat &a, const CMat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::DimensionMismatch, "max_abs_diff: shape");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

bool is_hermitian(const CMat &m, double tol) {
    if (!m.square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

cplx trace_of_product(const CMat &a, const CMat &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw Error(ErrorCode::DimensionMismatch, "trace_of_product: shape");
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
    return t;
}

CMat kron(const CMat &a, const CMat &b) {
    CMat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

CMat pauli(int i) {
    using namespace std::complex_literals;
    switch (i) {
        case 0: return CMat{{1.0, 0.0}, {0.0, 1.0}};
        case 1: return CMat{{0.0, 1.0}, {1.0, 0.0}};
        case 2: return CMat{{0.0, -1i}, {1i, 0.0}};
        case 3: return CMat{{1.0, 0.0}, {0.0, -1.0}};
        default: throw Error(ErrorCode::InvalidArgument, "pauli: index must be 0..3");
    }
}

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kJacobiOffTolerance = 1e-12;
constexpr int kJacobiSweepBudget = 100;

double off_diagonal_norm(const CMat &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Annihilates a(p, q) with the unitary G = diag-phase * real rotation,
// applied as A <- G^dagger A G.
void jacobi_rotate(CMat &a, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx phase = apq / mag;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const cplx gpp = c;
    const cplx gpq = s;
    const cplx gqp = -s * std::conj(phase);
    const cplx gqq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * mag;
    a(q, q) = aqq + t * mag;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const CMat &m) {
    if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "hermitian_eigenvalues: matrix is not square");
    if (!is_hermitian(m, kHermitianTolerance))
        throw Error(ErrorCode::NotHermitian, "hermitian_eigenvalues: matrix is not Hermitian within 1e-10");

    // Work on the exactly Hermitian part so rounding asymmetry cannot leak.
    CMat a = m;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }

    double frob = 0.0;
    for (const auto &v : a.data()) frob += std::norm(v);
    const double tolerance = kJacobiOffTolerance * std::max(1.0, std::sqrt(frob));

    bool converged = off_diagonal_norm(a) < tolerance;
    for (int sweep = 0; sweep < kJacobiSweepBudget && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, p, q);
        converged = off_diagonal_norm(a) < tolerance;
    }
    if (!converged)
        throw Error(ErrorCode::EigenNoConvergence, "hermitian_eigenvalues: no convergence within 100 sweeps");

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

CMat haar_unitary(std::size_t dim, Rng &rng) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "haar_unitary: dim must be positive");
    CMat r(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) r(i, j) = rng.complex_normal();

    // Householder QR: Q accumulates H_0 H_1 ... so that Q R = Ginibre.
    CMat q = CMat::identity(dim);
    std::vector<cplx> v(dim);
    for (std::size_t k = 0; k + 1 < dim; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k; i < dim; ++i) xnorm2 += std::norm(r(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const cplx x0 = r(k, k);
        const cplx phase = std::abs(x0) == 0.0 ? cplx{1.0} : x0 / std::abs(x0);
        const cplx alpha = -phase * xnorm;

        double vnorm2 = 0.0;
        for (std::size_t i = k; i < dim; ++i) {
            v[i] = r(i, k) - (i == k ? alpha : cplx{});
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        // H = I - 2 v v^dagger / |v|^2
        for (std::size_t j = k; j < dim; ++j) {
            cplx dot = 0.0;
            for (std::size_t i = k; i < dim; ++i) dot += std::conj(v[i]) * r(i, j);
            const cplx f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < dim; ++i) r(i, j) -= f * v[i];
        }
        for (std::size_t row = 0; row < dim; ++row) {
            cplx dot = 0.0;
            for (std::size_t i = k; i < dim; ++i) dot += q(row, i) * v[i];
            const cplx f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < dim; ++i) q(row, i) -= f * std::conj(v[i]);
        }
    }

    for (std::size_t j = 0; j < dim; ++j) {
        const cplx rjj = r(j, j);
        const double mag = std::abs(rjj);
        const cplx phase = mag == 0.0 ? cplx{1.0} : rjj / mag;
        for (std::size_t i = 0; i < dim; ++i) q(i, j) *= phase;
    }
    return q;
}

CMat swap_operator(std::size_t dim_a, std::size_t dim_b) {
    const std::size_t n = dim_a * dim_b;
    CMat s(n, n);
    for (std::size_t a = 0; a < dim_a; ++a)
        for (std::size_t b = 0; b < dim_b; ++b) s(b * dim_a + a, a * dim_b + b) = 1.0;
    return s;
}

}  // namespace cewlab
