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

#include <gtest/gtest.h>

#include "cewlab/error.h"
#include "cewlab/rng.h"
#include "test_util.h"

using namespace cewlab;
namespace tu = cewlab::testing;

TEST(Kron, IdentityTimesIdentity) { EXPECT_EQ(kron(CMat::identity(2), CMat::identity(2)), CMat::identity(4)); }

TEST(Kron, PauliXTimesPauliZ) {
    const CMat k = kron(pauli(1), pauli(3));
    CMat expected(4, 4);
    expected(0, 2) = 1.0;
    expected(1, 3) = -1.0;
    expected(2, 0) = 1.0;
    expected(3, 1) = -1.0;
    EXPECT_EQ(k, expected);
}

TEST(Kron, DiagonalBlocks) {
    const double a[] = {1, 0};
    const double b[] = {1, 0, 0};
    const double c[] = {1, 0, 0, 0, 0, 0};
    EXPECT_EQ(kron(CMat::diagonal(a), CMat::diagonal(b)), CMat::diagonal(c));
}

TEST(Kron, TraceMultiplicativeAndAssociative) {
    Rng rng(11, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const CMat a = tu::random_hermitian(2, rng);
        const CMat b = tu::random_hermitian(3, rng);
        const CMat c = tu::random_hermitian(2, rng);
        EXPECT_NEAR(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 0.0, 1e-12);
        EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    }
}

TEST(HermitianEigenvalues, Diagonal) {
    const double d[] = {3, 1, 2};
    const auto e = hermitian_eigenvalues(CMat::diagonal(d));
    ASSERT_EQ(e.size(), 3u);
    EXPECT_DOUBLE_EQ(e[0], 1.0);
    EXPECT_DOUBLE_EQ(e[1], 2.0);
    EXPECT_DOUBLE_EQ(e[2], 3.0);
}

TEST(HermitianEigenvalues, PauliX) {
    const auto e = hermitian_eigenvalues(pauli(1));
    EXPECT_NEAR(e[0], -1.0, 1e-12);
    EXPECT_NEAR(e[1], 1.0, 1e-12);
}

TEST(HermitianEigenvalues, PartialTransposeOfSinglet) {
    // The partial transpose of |Psi-><Psi-| is (I - 2 * SWAP)/2 ... written
    // out by hand: diag block 1/2 on |01>,|10> plus off-diagonal -1/2 on
    // |00><11| and |11><00|.
    CMat pt(4, 4);
    pt(1, 1) = 0.5;
    pt(2, 2) = 0.5;
    pt(0, 3) = -0.5;
    pt(3, 0) = -0.5;
    const auto e = hermitian_eigenvalues(pt);
    EXPECT_NEAR(e[0], -0.5, 1e-10);
    EXPECT_NEAR(e[1], 0.5, 1e-10);
    EXPECT_NEAR(e[2], 0.5, 1e-10);
    EXPECT_NEAR(e[3], 0.5, 1e-10);
}

TEST(HermitianEigenvalues, MatchesClosedFormFor2x2) {
    Rng rng(5, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const CMat m = tu::random_hermitian(2, rng);
        const auto [lo, hi] = tu::eig2(m);
        const auto e = hermitian_eigenvalues(m);
        EXPECT_NEAR(e[0], lo, 1e-10);
        EXPECT_NEAR(e[1], hi, 1e-10);
    }
}

TEST(HermitianEigenvalues, SumEqualsTraceAndDeterminantMatches) {
    Rng rng(6, 0);
    for (std::size_t n : {3u, 4u, 6u, 16u, 36u}) {
        const CMat m = tu::random_hermitian(n, rng);
        const auto e = hermitian_eigenvalues(m);
        double sum = 0.0;
        double prod = 1.0;
        for (double x : e) {
            sum += x;
            prod *= x;
        }
        EXPECT_NEAR(sum, m.trace().real(), 1e-9) << "n=" << n;
        if (n <= 6) EXPECT_NEAR(prod, tu::determinant(m).real(), 1e-9 * std::max(1.0, std::abs(prod)));
        EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
    }
}

TEST(HermitianEigenvalues, EigenvaluesOfUnitaryConjugationPreserved) {
    Rng rng(8, 0);
    const double spectrum[] = {-0.3, 0.1, 0.1, 0.45, 0.9, 2.0};
    const CMat u = haar_unitary(6, rng);
    const auto e = hermitian_eigenvalues(u.adjoint() * CMat::diagonal(spectrum) * u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(e[i], spectrum[i], 1e-10);
}

TEST(HermitianEigenvalues, RejectsNonHermitian) {
    CMat m(2, 2);
    m(0, 1) = 1.0;
    try {
        hermitian_eigenvalues(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(HaarUnitary, IsUnitaryWithUnitDeterminant) {
    Rng rng(1, 0);
    for (std::size_t dim : {2u, 4u, 6u, 36u}) {
        const CMat u = haar_unitary(dim, rng);
        EXPECT_LE(max_abs_diff(u.adjoint() * u, CMat::identity(dim)), 1e-12) << dim;
        if (dim <= 6) EXPECT_NEAR(std::abs(tu::determinant(u)), 1.0, 1e-12);
    }
}

TEST(HaarUnitary, SecondMomentOfEntry) {
    // E|U_00|^2 = 1/dim for the Haar measure.
    Rng rng(2024, 0);
    double sum = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) sum += std::norm(haar_unitary(4, rng)(0, 0));
    EXPECT_NEAR(sum / draws, 0.25, 0.005);
}

TEST(HaarUnitary, FourthMomentOfEntry) {
    // Weingarten values at d = 2: E|U_00|^4 = 2/(d(d+1)) and the
    // phase-sensitive E[U_00 U_11 conj(U_01 U_10)] = -1/(d(d^2-1)).
    Rng rng(77, 0);
    const int draws = 100000;
    double m4 = 0.0;
    cplx cross = 0.0;
    for (int i = 0; i < draws; ++i) {
        const CMat u = haar_unitary(2, rng);
        m4 += std::pow(std::norm(u(0, 0)), 2);
        cross += u(0, 0) * u(1, 1) * std::conj(u(0, 1) * u(1, 0));
    }
    EXPECT_NEAR(m4 / draws, 2.0 / 6.0, 0.005);
    EXPECT_NEAR(cross.real() / draws, -1.0 / 6.0, 0.005);
}

TEST(HaarUnitary, BitReproducible) {
    Rng a(99, 3);
    Rng b(99, 3);
    Rng c(99, 4);
    const CMat ua = haar_unitary(6, a);
    EXPECT_EQ(ua, haar_unitary(6, b));
    EXPECT_NE(ua, haar_unitary(6, c));
}

TEST(SwapOperator, QubitSwap) {
    const CMat s = swap_operator(2, 2);
    CMat expected(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 2) = 1.0;
    expected(2, 1) = 1.0;
    expected(3, 3) = 1.0;
    EXPECT_EQ(s, expected);
}

TEST(SwapOperator, MapsProductKets) {
    const CMat s = swap_operator(2, 3);
    // |0>_2 (x) |1>_3 is basis index 1; |1>_3 (x) |0>_2 is index 2.
    CMat ket(6, 1);
    ket(1, 0) = 1.0;
    const CMat image = s * ket;
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(image(i, 0), i == 2 ? cplx{1.0} : cplx{0.0});
}

TEST(SwapOperator, OrthogonalAndTransposeSwapsDims) {
    for (auto [a, b] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{1u, 4u}}) {
        const CMat s = swap_operator(a, b);
        EXPECT_EQ(s.transpose() * s, CMat::identity(a * b));
        EXPECT_EQ(s.transpose(), swap_operator(b, a));
    }
}

TEST(SwapOperator, ConjugationExchangesFactors) {
    Rng rng(3, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const CMat ra = sample_density(SystemKind::TwoQubit, rng).mat();
        const CMat rb = sample_density(SystemKind::QubitQutrit, rng).mat();
        const CMat s = swap_operator(4, 6);
        EXPECT_LE(max_abs_diff(s * kron(ra, rb) * s.transpose(), kron(rb, ra)), 1e-12);
    }
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
        EXPECT_NE(x, d.next_u64());
    }
}

TEST(Rng, UniformMomentsAndBelowRange) {
    Rng r(12, 0);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        s2 += u * u;
    }
    EXPECT_NEAR(s / n, 0.5, 0.005);
    EXPECT_NEAR(s2 / n, 1.0 / 3.0, 0.005);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(7), 7u);
}

TEST(Rng, NormalMoments) {
    Rng r(13, 0);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        s += x;
        s2 += x * x;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.01);
}
