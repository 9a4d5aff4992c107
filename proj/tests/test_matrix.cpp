// Copyright 2026 The qpv-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "qpv/eig.hpp"
#include "qpv/qinfo.hpp"
#include "qpv/states.hpp"

using namespace qpv;

namespace {

Operator random_hermitian(std::vector<std::size_t> dims, SplitMix64 &rng) {
    std::size_t n = 1;
    for (std::size_t d : dims) {
        n *= d;
    }
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
        }
    }
    return Operator(m.hermitized(), std::move(dims));
}

}  // namespace

TEST_CASE("kron basics") {
    const Operator i2 = identity_operator({2});
    const Operator i4 = kron(i2, i2);
    REQUIRE(max_abs_diff(i4.mat(), CMat::identity(4)) == 0.0);
    REQUIRE(i4.dims() == std::vector<std::size_t>{2, 2});

    // (X (x) X)|00> = |11>
    const CMat xx = kron(pauli(1).mat(), pauli(1).mat());
    const CMat out = xx * basis_ket(4, 0);
    REQUIRE(max_abs_diff(out, basis_ket(4, 3)) < 1e-15);

    SplitMix64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Operator a = random_hermitian({2}, rng);
        const Operator b = random_hermitian({3}, rng);
        const cplx lhs = kron(a, b).mat().trace();
        const cplx rhs = a.mat().trace() * b.mat().trace();
        REQUIRE(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("kron associativity up to dims bookkeeping") {
    SplitMix64 rng(12);
    const Operator a = random_hermitian({2}, rng);
    const Operator b = random_hermitian({2}, rng);
    const Operator c = random_hermitian({3}, rng);
    const Operator left = kron(kron(a, b), c);
    const Operator right = kron(a, kron(b, c));
    REQUIRE(max_abs_diff(left.mat(), right.mat()) < 1e-13);
    REQUIRE(left.dims() == right.dims());
}

TEST_CASE("partial trace") {
    // Maximally entangled marginal.
    const Operator phi = bell_state(kPhiPlus);
    const Operator marginal = partial_trace(phi, {0});
    REQUIRE(max_abs_diff(marginal.mat(), CMat::identity(2) * cplx(0.5)) < 1e-14);

    SECTION("product factorization") {
        SplitMix64 rng(13);
        const DensityMatrix rho = random_density_matrix({2}, rng);
        const DensityMatrix sigma = random_density_matrix({3}, rng);
        const Operator joint = kron(rho.op(), sigma.op());
        const Operator back = partial_trace(joint, {0});
        REQUIRE(max_abs_diff(back.mat(), rho.mat()) < 1e-13);
    }

    SECTION("trace preservation on random operators") {
        SplitMix64 rng(14);
        for (int trial = 0; trial < 10; ++trial) {
            const Operator rho = random_hermitian({2, 2, 2}, rng);
            const Operator red = partial_trace(rho, {1});
            REQUIRE(std::abs(red.mat().trace() - rho.mat().trace()) < 1e-12);
        }
    }

    SECTION("bad index") {
        REQUIRE_THROWS_AS(partial_trace(phi, {5}), std::out_of_range);
        REQUIRE_THROWS_AS(partial_trace(phi, {}), std::invalid_argument);
    }
}

TEST_CASE("partial transpose") {
    SECTION("involution") {
        SplitMix64 rng(15);
        for (int trial = 0; trial < 10; ++trial) {
            const Operator rho = random_hermitian({2, 2, 3}, rng);
            const Operator back = partial_transpose(partial_transpose(rho, 2), 2);
            REQUIRE(max_abs_diff(back.mat(), rho.mat()) == 0.0);
        }
    }

    SECTION("spectrum of the transposed Bell projector") {
        // Independent oracle: direct eigendecomposition of the 4x4 image.
        const Operator pt = partial_transpose(bell_state(kPhiPlus), 1);
        const HermitianEigen e = hermitian_eigen(pt.mat());
        const std::vector<double> expected{-0.5, 0.5, 0.5, 0.5};
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE(e.eigenvalues[i] == Catch::Approx(expected[i]).margin(1e-12));
        }
    }

    SECTION("separable states stay PPT") {
        SplitMix64 rng(16);
        const DensityMatrix rho = random_density_matrix({2}, rng);
        const DensityMatrix sigma = random_density_matrix({2}, rng);
        const Operator prod = kron(rho.op(), sigma.op());
        const Operator pt = partial_transpose(prod, 1);
        REQUIRE(max_abs_diff(pt.mat(), kron(rho.op(), Operator(sigma.mat().transpose(), {2})).mat()) <
                1e-14);
        REQUIRE(min_eigenvalue(pt.mat()) > -1e-12);
    }

    SECTION("bad index") {
        REQUIRE_THROWS_AS(partial_transpose(bell_state(0), 2), std::out_of_range);
    }
}

TEST_CASE("permute factors") {
    SplitMix64 rng(17);
    const Operator a = random_hermitian({2}, rng);
    const Operator b = random_hermitian({3}, rng);
    const Operator ab = kron(a, b);
    const Operator ba = permute_factors(ab, {1, 0});
    REQUIRE(ba.dims() == std::vector<std::size_t>{3, 2});
    REQUIRE(max_abs_diff(ba.mat(), kron(b, a).mat()) < 1e-14);

    // Round trip through an arbitrary permutation.
    const Operator c = random_hermitian({2}, rng);
    const Operator abc = kron(kron(a, b), c);
    const Operator perm = permute_factors(abc, {2, 0, 1});
    const Operator back = permute_factors(perm, {1, 2, 0});
    REQUIRE(max_abs_diff(back.mat(), abc.mat()) == 0.0);
}

TEST_CASE("operator invariants") {
    REQUIRE_THROWS_AS(Operator(CMat::identity(4), {3}), std::invalid_argument);
    REQUIRE_THROWS_AS(Operator(CMat::identity(4), {}), std::invalid_argument);
    REQUIRE_THROWS_AS(Operator(CMat(2, 3), {2, 3}), std::invalid_argument);
}

TEST_CASE("hermitian eigendecomposition") {
    SECTION("identity and Pauli Z") {
        const HermitianEigen id = hermitian_eigen(CMat::identity(5));
        for (double lam : id.eigenvalues) {
            REQUIRE(lam == Catch::Approx(1.0).margin(1e-14));
        }
        const HermitianEigen z = hermitian_eigen(pauli(3).mat());
        REQUIRE(z.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-14));
        REQUIRE(z.eigenvalues[1] == Catch::Approx(1.0).margin(1e-14));
    }

    SECTION("reconstruction on random Hermitian matrices") {
        SplitMix64 rng(18);
        for (std::size_t n : {2, 5, 16, 32}) {
            const Operator h = random_hermitian({n}, rng);
            const HermitianEigen e = hermitian_eigen(h.mat());
            REQUIRE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
            CMat rec(n, n);
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        rec(i, j) += e.eigenvectors(i, k) * e.eigenvalues[k] *
                                     std::conj(e.eigenvectors(j, k));
                    }
                }
            }
            REQUIRE(max_abs_diff(rec, h.mat()) < 1e-9 * std::max(1.0, h.mat().fro_norm()));
        }
    }

    SECTION("rejects non-Hermitian input") {
        CMat bad(2, 2);
        bad(0, 1) = 1.0;
        REQUIRE_THROWS_AS(hermitian_eigen(bad), std::invalid_argument);
    }

    SECTION("psd clip") {
        const HermitianEigen z = hermitian_eigen(psd_clip(pauli(3).mat()));
        REQUIRE(z.eigenvalues[0] == Catch::Approx(0.0).margin(1e-14));
        REQUIRE(z.eigenvalues[1] == Catch::Approx(1.0).margin(1e-14));
    }
}
