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

#include "cewlab/states.h"

#include <algorithm>
#include <cmath>

#include "cewlab/error.h"

namespace cewlab {
namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = -1e-10;

void validate_state(const CMat &mat, std::size_t dim, const char *what) {
    if (mat.rows() != dim || mat.cols() != dim)
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": wrong dimension");
    if (!is_hermitian(mat, kHermitianTol))
        throw Error(ErrorCode::InvalidArgument, std::string(what) + ": not Hermitian");
    const cplx tr = mat.trace();
    if (std::abs(tr - 1.0) > kTraceTol) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": trace != 1");
}

}  // namespace

SubsystemDims dims_of(SystemKind kind) {
    switch (kind) {
        case SystemKind::TwoQubit: return {2, 2};
        case SystemKind::QubitQutrit: return {2, 3};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown system kind");
}

std::string_view kind_name(SystemKind kind) {
    return kind == SystemKind::TwoQubit ? "two-qubit" : "qubit-qutrit";
}

SystemKind parse_kind(std::string_view name) {
    if (name == "two-qubit") return SystemKind::TwoQubit;
    if (name == "qubit-qutrit") return SystemKind::QubitQutrit;
    throw Error(ErrorCode::InvalidArgument, "unknown system kind '" + std::string(name) + "'");
}

DensityMatrix::DensityMatrix(SystemKind kind, CMat mat) : kind_(kind), mat_(std::move(mat)) {
    validate_state(mat_, dims_of(kind_).total(), "DensityMatrix");
    if (hermitian_eigenvalues(mat_).front() < kPsdTol)
        throw Error(ErrorCode::InvalidArgument, "DensityMatrix: not positive semidefinite");
}

CollectiveState::CollectiveState(SystemKind kind, CMat mat) : kind_(kind), mat_(std::move(mat)) {
    const std::size_t d = dims_of(kind_).total();
    validate_state(mat_, d * d, "CollectiveState");
}

std::vector<double> sample_spectrum(std::size_t dim, Rng &rng) {
    std::vector<double> w(dim);
    double sum = 0.0;
    for (auto &x : w) {
        x = rng.exponential();
        sum += x;
    }
    for (auto &x : w) x /= sum;
    return w;
}

DensityMatrix sample_density(SystemKind kind, Rng &rng) {
    const std::size_t dim = dims_of(kind).total();
    const std::vector<double> spectrum = sample_spectrum(dim, rng);
    const CMat u = haar_unitary(dim, rng);
    CMat rho = u.adjoint() * CMat::diagonal(spectrum) * u;
    // Symmetrise away the rounding asymmetry of the triple product.
    rho = 0.5 * (rho + rho.adjoint());
    const cplx tr = rho.trace();
    rho *= 1.0 / tr.real();
    return DensityMatrix(kind, std::move(rho));
}

CMat partial_transpose(const CMat &mat, SubsystemDims dims, Subsystem which) {
    const std::size_t d1 = dims.first;
    const std::size_t d2 = dims.second;
    CMat out(mat.rows(), mat.cols());
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b)
            for (std::size_t ap = 0; ap < d1; ++ap)
                for (std::size_t bp = 0; bp < d2; ++bp) {
                    const std::size_t row = a * d2 + b;
                    const std::size_t col = ap * d2 + bp;
                    if (which == Subsystem::First)
                        out(row, col) = mat(ap * d2 + b, a * d2 + bp);
                    else
                        out(row, col) = mat(a * d2 + bp, ap * d2 + b);
                }
    return out;
}

CMat partial_transpose(const DensityMatrix &rho, Subsystem which) {
    return partial_transpose(rho.mat(), rho.dims(), which);
}

double negativity(const DensityMatrix &rho, Subsystem which) {
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(partial_transpose(rho, which)))
        if (lambda < 0.0) sum += lambda;
    return std::abs(sum);
}

bool is_entangled(const DensityMatrix &rho) { return negativity(rho) > kEntanglementThreshold; }

CollectiveState collective_state(const DensityMatrix &rho) {
    const SubsystemDims d = rho.dims();
    // S maps (sub1, sub2) ordering onto (sub2, sub1).
    const CMat s = swap_operator(d.first, d.second);
    const CMat swapped = s * rho.mat() * s.transpose();
    return CollectiveState(rho.kind(), kron(swapped, rho.mat()));
}

}  // namespace cewlab
