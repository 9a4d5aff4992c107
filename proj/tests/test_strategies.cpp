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

#include "qpv/strategies.hpp"

using namespace qpv;

namespace {

/// Protocol with a single hypothesis, for per-state answer distributions.
ProtocolSpec single_state_spec(const ProtocolSpec &base, const Operator &state, int label) {
    ProtocolSpec spec = base;
    spec.hypotheses.clear();
    spec.hypotheses.push_back({label, 1.0, DensityMatrix(state)});
    spec.ensemble.clear();
    return spec;
}

}  // namespace

TEST_CASE("honest strategies") {
    REQUIRE(evaluate_prover_exact(bell_protocol(), honest_bell_measurement()) ==
            Catch::Approx(1.0).margin(1e-14));
    REQUIRE(evaluate_prover_exact(sym_antisym_protocol(), honest_swap_test()) ==
            Catch::Approx(1.0).margin(1e-14));

    SECTION("Bell measurement on Phi- is deterministic") {
        const DensityMatrix phi_minus(bell_state(kPhiMinus));
        const ProverStrategy ps = honest_bell_measurement();
        REQUIRE(hs_inner(ps.measurement.elements[kPhiMinus].mat(), phi_minus.mat()) ==
                Catch::Approx(1.0).margin(1e-14));
    }

    SECTION("Bell measurement on the maximally mixed state is uniform") {
        const ProverStrategy ps = honest_bell_measurement();
        const CMat mixed = CMat::identity(4) * cplx(0.25);
        for (const Operator &e : ps.measurement.elements) {
            REQUIRE(hs_inner(e.mat(), mixed) == Catch::Approx(0.25).margin(1e-14));
        }
    }

    SECTION("SWAP test outcomes") {
        const ProverStrategy ps = honest_swap_test();
        for (int sym_label : {kPhiPlus, kPhiMinus, kPsiPlus}) {
            REQUIRE(hs_inner(ps.measurement.elements[0].mat(), bell_state(sym_label).mat()) ==
                    Catch::Approx(1.0).margin(1e-14));
        }
        REQUIRE(hs_inner(ps.measurement.elements[1].mat(), bell_state(kPsiMinus).mat()) ==
                Catch::Approx(1.0).margin(1e-14));
        // |01> has zero SWAP expectation: antisymmetric outcome half the time.
        const Operator ket01 = projector(kron(basis_ket(2, 0), basis_ket(2, 1)), {2, 2});
        REQUIRE(hs_inner(ps.measurement.elements[1].mat(), ket01.mat()) ==
                Catch::Approx(0.5).margin(1e-14));
    }
}

TEST_CASE("locc xor attains 5/6") {
    const AttackStrategy s = locc_xor();
    REQUIRE(s.classical_only);
    REQUIRE_NOTHROW(validate_strategy(s, 2));
    const ExactRates r = evaluate_strategy_exact(sym_antisym_protocol(), s);
    REQUIRE(r.success == Catch::Approx(5.0 / 6.0).margin(1e-14));
    REQUIRE(r.conclusive == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(r.agree == Catch::Approx(1.0).margin(1e-14));

    SECTION("deterministic per-state answers") {
        const ProtocolSpec base = sym_antisym_protocol();
        // Psi-: outcomes always unequal, XOR = 1, always answers antisymmetric.
        const ExactRates anti =
            evaluate_strategy_exact(single_state_spec(base, bell_state(kPsiMinus), 1), s);
        REQUIRE(anti.success == Catch::Approx(1.0).margin(1e-14));
        // Phi+: outcomes always equal, XOR = 0, always answers symmetric.
        const ExactRates sym =
            evaluate_strategy_exact(single_state_spec(base, bell_state(kPhiPlus), 0), s);
        REQUIRE(sym.success == Catch::Approx(1.0).margin(1e-14));
        // Psi+ is the only error case.
        const ExactRates err =
            evaluate_strategy_exact(single_state_spec(base, bell_state(kPsiPlus), 0), s);
        REQUIRE(err.success == Catch::Approx(0.0).margin(1e-14));
    }
}

TEST_CASE("two-round locc xor attains 17/18") {
    const AttackStrategy s = locc_xor_two_round();
    REQUIRE_NOTHROW(validate_strategy(s, 2));
    const ProtocolSpec spec = sym_antisym_two_round();
    const ExactRates r = evaluate_strategy_exact(spec, s);
    REQUIRE(r.success == Catch::Approx(17.0 / 18.0).margin(1e-14));
    REQUIRE(r.conclusive == Catch::Approx(1.0).margin(1e-14));

    SECTION("always correct on antisymmetric inputs") {
        const ExactRates anti = evaluate_strategy_exact(
            single_state_spec(spec, spec.hypotheses[1].state.op(), 1), s);
        REQUIRE(anti.success == Catch::Approx(1.0).margin(1e-14));
    }

    SECTION("errs exactly on the double Psi+ input") {
        const Operator both_psi_plus = kron(bell_state(kPsiPlus), bell_state(kPsiPlus));
        const ExactRates err =
            evaluate_strategy_exact(single_state_spec(spec, both_psi_plus, 0), s);
        REQUIRE(err.success == Catch::Approx(0.0).margin(1e-14));
        // Error weight within the protocol: 1/18.
        const ExactRates full = evaluate_strategy_exact(spec, s);
        REQUIRE(1.0 - full.success == Catch::Approx(1.0 / 18.0).margin(1e-14));
    }
}

TEST_CASE("bell computational guess attains 1/2") {
    const AttackStrategy s = locc_bell_computational_guess();
    REQUIRE_NOTHROW(validate_strategy(s, 4));
    const ExactRates r = evaluate_strategy_exact(bell_protocol(), s);
    REQUIRE(r.success == Catch::Approx(0.5).margin(1e-14));
    REQUIRE(r.agree == Catch::Approx(1.0).margin(1e-14));  // shared randomness
    REQUIRE(r.conclusive == Catch::Approx(1.0).margin(1e-14));

    SECTION("conditional on the identified class the guess is uniform") {
        for (int label = 0; label < 4; ++label) {
            const ExactRates one = evaluate_strategy_exact(
                single_state_spec(bell_protocol(), bell_state(label), label), s);
            REQUIRE(one.success == Catch::Approx(0.5).margin(1e-14));
        }
    }
}

TEST_CASE("loqc exchange breaks the two-round protocol perfectly") {
    const AttackStrategy s = loqc_exchange();
    REQUIRE_FALSE(s.classical_only);
    REQUIRE_NOTHROW(validate_strategy(s, 2));
    const ExactRates r = evaluate_strategy_exact(sym_antisym_two_round(), s);
    REQUIRE(r.success == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(r.agree == Catch::Approx(1.0).margin(1e-12));

    SECTION("the separation over the classical optimum is exactly 1/18") {
        const double classical =
            evaluate_strategy_exact(sym_antisym_two_round(), locc_xor_two_round()).success;
        REQUIRE(r.success - classical == Catch::Approx(1.0 / 18.0).margin(1e-12));
    }

    SECTION("rejected when declared classical-only") {
        AttackStrategy doctored = loqc_exchange();
        doctored.classical_only = true;
        REQUIRE_THROWS_AS(validate_strategy(doctored, 2), std::invalid_argument);
    }

    SECTION("dimension mismatch on a single-pair protocol") {
        REQUIRE_THROWS_AS(evaluate_strategy_exact(sym_antisym_protocol(), s),
                          std::invalid_argument);
    }
}

TEST_CASE("classical split channels pass the classical-only validator") {
    REQUIRE(sent_register_is_classical(measure_keep_send_channel(2)));
    REQUIRE(sent_register_is_classical(measure_keep_send_channel(4)));
    REQUIRE_FALSE(sent_register_is_classical(route_channel(2, true)));
}

TEST_CASE("teleport-and-guess rates") {
    for (std::size_t d = 1; d <= 3; ++d) {
        for (std::size_t k = 1; k <= 4; ++k) {
            const ExactRates r =
                evaluate_strategy_exact(generic_qpv(d, d, k), teleport_guess_attack(d, k));
            REQUIRE(r.conditional == 1.0);
            REQUIRE(r.conclusive ==
                    Catch::Approx(1.0 / (static_cast<double>(k) * d * d)).margin(1e-12));
        }
    }
    REQUIRE(evaluate_strategy_exact(generic_qpv(2, 2, 1), teleport_guess_attack(2, 1)).conclusive ==
            Catch::Approx(0.25).margin(1e-15));
    REQUIRE_THROWS_AS(
        evaluate_strategy_exact(generic_qpv(2, 2, 1), teleport_guess_attack(2, 3)),
        std::invalid_argument);
    REQUIRE_THROWS_AS(teleport_guess_attack(0, 1), std::invalid_argument);
}

TEST_CASE("teleportation circuit validates the uniform-correction shortcut") {
    // Bell measurement on (input, resource half A) teleports the input onto
    // resource half B up to the Pauli correction indexed by the outcome.
    SplitMix64 rng(31);
    const Operator u = random_local_unitary(2, rng);
    const CMat psi = u.mat() * basis_ket(2, 0);  // random pure input

    const CMat joint_ket = kron(psi, max_entangled_ket(2));  // factors [in, resA, resB]
    const Operator joint = projector(joint_ket, {2, 2, 2});

    const std::vector<CMat> corrections{pauli(0).mat(), pauli(3).mat(), pauli(1).mat(),
                                        pauli(1).mat() * pauli(3).mat()};
    for (int outcome = 0; outcome < 4; ++outcome) {
        const CMat proj = kron(bell_state(outcome).mat(), CMat::identity(2));
        const CMat collapsed = proj * joint.mat() * proj;
        const Operator post(collapsed, {2, 2, 2});
        const Operator b_side = partial_trace(post, {2});
        const double p = b_side.mat().trace().real();
        REQUIRE(p == Catch::Approx(0.25).margin(1e-12));  // uniform correction index

        const CMat normalized = b_side.mat() * cplx(1.0 / p);
        const CMat corrected =
            corrections[outcome] * normalized * corrections[outcome].adjoint();
        REQUIRE(max_abs_diff(corrected, psi * psi.adjoint()) < 1e-12);
    }
}

TEST_CASE("strategy channels are trace preserving and POVMs complete") {
    for (const AttackStrategy &s :
         {locc_xor(), locc_xor_two_round(), locc_bell_computational_guess(), loqc_exchange()}) {
        const CircuitAttack &ca = s.circuit();
        REQUIRE_NOTHROW(ca.split_a.validate());
        REQUIRE_NOTHROW(ca.split_b.validate());
        REQUIRE_NOTHROW(ca.final_a.validate());
        REQUIRE_NOTHROW(ca.final_b.validate());
    }
}

TEST_CASE("strategy validator rejects broken pieces") {
    AttackStrategy s = locc_xor();
    std::get<CircuitAttack>(s.body).split_a.kraus.pop_back();  // no longer trace preserving
    REQUIRE_THROWS_AS(validate_strategy(s, 2), std::invalid_argument);

    AttackStrategy s2 = locc_xor();
    std::get<CircuitAttack>(s2.body).answer_a = [](std::size_t, std::size_t) { return 7; };
    REQUIRE_THROWS_AS(validate_strategy(s2, 2), std::invalid_argument);
}
