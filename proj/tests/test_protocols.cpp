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

#include "qpv/protocols.hpp"

using namespace qpv;

TEST_CASE("bell protocol") {
    const ProtocolSpec spec = bell_protocol();
    REQUIRE_NOTHROW(validate(spec));
    REQUIRE(spec.hypotheses.size() == 4);
    REQUIRE(honest_success(spec) == Catch::Approx(1.0).margin(1e-14));

    SECTION("average input state is maximally mixed") {
        CMat avg(4, 4);
        for (const Hypothesis &h : spec.hypotheses) {
            avg += h.state.mat() * cplx(h.prior);
        }
        REQUIRE(max_abs_diff(avg, CMat::identity(4) * cplx(0.25)) < 1e-14);
    }

    SECTION("hypothesis states pairwise orthogonal") {
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                REQUIRE(hs_inner(spec.hypotheses[i].state.mat(),
                                 spec.hypotheses[j].state.mat()) < 1e-14);
            }
        }
    }
}

TEST_CASE("sym-antisym protocol matches the exact mixture matrices") {
    const ProtocolSpec spec = sym_antisym_protocol();
    REQUIRE_NOTHROW(validate(spec));

    CMat rho0(4, 4);
    const double s = 1.0 / 6.0;
    rho0(0, 0) = 2 * s;
    rho0(1, 1) = s;
    rho0(1, 2) = s;
    rho0(2, 1) = s;
    rho0(2, 2) = s;
    rho0(3, 3) = 2 * s;
    REQUIRE(max_abs_diff(spec.hypotheses[0].state.mat(), rho0) < 1e-15);

    CMat rho1(4, 4);
    rho1(1, 1) = 0.5;
    rho1(1, 2) = -0.5;
    rho1(2, 1) = -0.5;
    rho1(2, 2) = 0.5;
    REQUIRE(max_abs_diff(spec.hypotheses[1].state.mat(), rho1) < 1e-15);

    SECTION("orthogonal hypotheses, deterministic SWAP test") {
        REQUIRE(hs_inner(spec.hypotheses[0].state.mat(), spec.hypotheses[1].state.mat()) <
                1e-12);
        REQUIRE(honest_success(spec) == Catch::Approx(1.0).margin(1e-14));
    }

    SECTION("ensemble decomposition reproduces the mixtures") {
        CMat sym(4, 4), anti(4, 4);
        for (const PureEnsembleMember &m : spec.ensemble) {
            const CMat proj = m.ket * m.ket.adjoint();
            (m.label == 0 ? sym : anti) += proj * cplx(m.prior);
        }
        REQUIRE(max_abs_diff(sym, spec.hypotheses[0].state.mat() * cplx(0.5)) < 1e-14);
        REQUIRE(max_abs_diff(anti, spec.hypotheses[1].state.mat() * cplx(0.5)) < 1e-14);
    }
}

TEST_CASE("two-round protocol") {
    const ProtocolSpec spec = sym_antisym_two_round();
    REQUIRE_NOTHROW(validate(spec));
    REQUIRE(spec.dims == std::vector<std::size_t>{2, 2, 2, 2});
    REQUIRE(spec.a_factors == std::vector<std::size_t>{0, 2});

    SECTION("hypothesis states are the tensor squares") {
        const ProtocolSpec single = sym_antisym_protocol();
        const Operator r00 =
            kron(single.hypotheses[0].state.op(), single.hypotheses[0].state.op());
        const Operator r11 =
            kron(single.hypotheses[1].state.op(), single.hypotheses[1].state.op());
        REQUIRE(max_abs_diff(spec.hypotheses[0].state.mat(), r00.mat()) < 1e-14);
        REQUIRE(max_abs_diff(spec.hypotheses[1].state.mat(), r11.mat()) < 1e-14);
    }

    SECTION("both rounds Psi+ happens with probability 1/18") {
        double p_both_psi_plus = 0.0;
        double p_sym = 0.0;
        for (const PureEnsembleMember &m : spec.ensemble) {
            if (m.label != 0) {
                continue;
            }
            p_sym += m.prior;
            const CMat expect = kron(bell_ket(kPsiPlus), bell_ket(kPsiPlus));
            if (max_abs_diff(m.ket, expect) < 1e-12) {
                p_both_psi_plus += m.prior;
            }
        }
        REQUIRE(p_sym == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(p_both_psi_plus == Catch::Approx(1.0 / 18.0).margin(1e-14));
        // Conditioned on the symmetric hypothesis: 1/9.
        REQUIRE(p_both_psi_plus / p_sym == Catch::Approx(1.0 / 9.0).margin(1e-12));
    }

    SECTION("SWAP test on one pair still answers perfectly") {
        REQUIRE(honest_success(spec) == Catch::Approx(1.0).margin(1e-14));
    }
}

TEST_CASE("generic family") {
    const ProtocolSpec spec = generic_qpv(2, 2, 1);
    REQUIRE(spec.k == 1);
    REQUIRE(spec.abstract);
    REQUIRE_THROWS_AS(honest_success(spec), std::invalid_argument);

    REQUIRE(generic_qpv(1, 3, 4).max_input_dim() == 3);
    REQUIRE(generic_qpv(1, 1, 4).max_input_dim() == 1);  // all-classical inputs
    REQUIRE_THROWS_AS(generic_qpv(0, 2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(generic_qpv(2, 2, 0), std::invalid_argument);
}

TEST_CASE("protocol validation catches bad specs") {
    ProtocolSpec spec = bell_protocol();
    spec.hypotheses[0].prior = 0.3;  // priors no longer sum to one
    REQUIRE_THROWS_AS(validate(spec), std::invalid_argument);

    ProtocolSpec spec2 = bell_protocol();
    spec2.attack_values.emplace_back("impossible", 1.5);
    REQUIRE_THROWS_AS(validate(spec2), std::invalid_argument);

    ProtocolSpec spec3 = bell_protocol();
    spec3.attack_values.emplace_back("guess", 0.5);
    REQUIRE_NOTHROW(validate(spec3));
}
