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

/**
 * @file
 * Declarative definitions of position-verification protocols: an input
 * ensemble (hypotheses with priors), a bipartition of the tensor factors
 * into the side sent by each verifier, and the honest measurement with its
 * answer map.
 */

#pragma once

#include <string>

#include "qpv/qinfo.hpp"
#include "qpv/states.hpp"

namespace qpv {

/// Output label meaning "no answer" / inconclusive.
inline constexpr int kNoAnswer = -1;

struct Hypothesis {
    int label;
    double prior;
    DensityMatrix state;
};

struct PureEnsembleMember {
    int label;
    double prior;
    CMat ket;
};

/**
 * A protocol instance. `a_factors` lists the tensor factors sent to the
 * attacker on the A side; the complement is the B side. Concrete protocols
 * carry hypothesis states and an honest measurement; abstract ones (the
 * generic d_A/d_B/k family) carry only their parameters.
 */
struct ProtocolSpec {
    std::string name;
    std::vector<std::size_t> dims;
    std::vector<std::size_t> a_factors;
    std::vector<Hypothesis> hypotheses;
    std::vector<PureEnsembleMember> ensemble;  // optional pure decomposition
    std::optional<Povm> honest_measurement;
    std::vector<int> answer_map;  // honest POVM outcome -> label (kNoAnswer allowed)

    bool abstract = false;
    std::size_t d_a = 0, d_b = 0, k = 0;  // generic-family parameters

    // Known attack values registered against this spec; honest success must
    // dominate every one of them.
    std::vector<std::pair<std::string, double>> attack_values;

    std::vector<std::size_t> b_factors() const {
        std::vector<std::size_t> out;
        for (std::size_t f = 0; f < dims.size(); ++f) {
            if (std::find(a_factors.begin(), a_factors.end(), f) == a_factors.end()) {
                out.push_back(f);
            }
        }
        return out;
    }

    std::size_t max_input_dim() const { return std::max(d_a, d_b); }

    int num_labels() const {
        int m = 0;
        for (const Hypothesis &h : hypotheses) {
            m = std::max(m, h.label + 1);
        }
        if (abstract) {
            m = std::max<int>(m, static_cast<int>(k));
        }
        return m;
    }
};

/// Success probability of the honest prover. Throws on abstract specs.
inline double honest_success(const ProtocolSpec &spec) {
    if (spec.abstract || !spec.honest_measurement) {
        throw std::invalid_argument("honest_success: spec has no concrete honest measurement");
    }
    const Povm &m = *spec.honest_measurement;
    double p = 0.0;
    for (const Hypothesis &h : spec.hypotheses) {
        for (std::size_t o = 0; o < m.size(); ++o) {
            if (spec.answer_map[o] == h.label) {
                p += h.prior * hs_inner(m.elements[o].mat(), h.state.mat());
            }
        }
    }
    return p;
}

/**
 * Structural validation: priors sum to one, the cut partitions the factors,
 * the answer map is total on conclusive outcomes, and the honest success
 * dominates every registered attack value.
 */
inline void validate(const ProtocolSpec &spec) {
    double total = 0.0;
    for (const Hypothesis &h : spec.hypotheses) {
        total += h.prior;
        if (h.state.dims() != spec.dims) {
            throw std::invalid_argument("ProtocolSpec: hypothesis dims mismatch");
        }
    }
    if (!spec.abstract && std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("ProtocolSpec: priors sum to " + std::to_string(total));
    }
    for (std::size_t f : spec.a_factors) {
        if (f >= spec.dims.size()) {
            throw std::invalid_argument("ProtocolSpec: A-side factor out of range");
        }
    }
    if (spec.honest_measurement) {
        spec.honest_measurement->validate();
        if (spec.answer_map.size() != spec.honest_measurement->size()) {
            throw std::invalid_argument("ProtocolSpec: answer map not total");
        }
        for (std::size_t o = 0; o < spec.answer_map.size(); ++o) {
            const bool inconclusive = spec.honest_measurement->inconclusive &&
                                      *spec.honest_measurement->inconclusive == o;
            if (!inconclusive && spec.answer_map[o] == kNoAnswer) {
                throw std::invalid_argument("ProtocolSpec: conclusive outcome unmapped");
            }
        }
        const double honest = honest_success(spec);
        for (const auto &[who, value] : spec.attack_values) {
            if (value > honest + 1e-9) {
                throw std::invalid_argument("ProtocolSpec: attack '" + who +
                                            "' beats the honest prover");
            }
        }
    }
    if (spec.abstract && (spec.d_a < 1 || spec.d_b < 1 || spec.k < 1)) {
        throw std::invalid_argument("ProtocolSpec: generic parameters must be positive");
    }
}

namespace detail {

/// Uniform mixture of the three symmetric Bell projectors.
inline DensityMatrix symmetric_bell_mixture() {
    CMat m(4, 4);
    for (int i : {kPhiPlus, kPhiMinus, kPsiPlus}) {
        m += bell_state(i).mat() * cplx(1.0 / 3.0);
    }
    return DensityMatrix(std::move(m), {2, 2});
}

}  // namespace detail

/**
 * Bell-state discrimination: each verifier sends one qubit of a uniformly
 * random Bell state and the prover names the state. Honest strategy is the
 * Bell measurement, which succeeds with certainty.
 */
inline ProtocolSpec bell_protocol() {
    ProtocolSpec spec;
    spec.name = "bell";
    spec.dims = {2, 2};
    spec.a_factors = {0};
    for (int i = 0; i < 4; ++i) {
        spec.hypotheses.push_back({i, 0.25, DensityMatrix(bell_state(i))});
        spec.ensemble.push_back({i, 0.25, bell_ket(i)});
    }
    spec.honest_measurement = bell_povm();
    spec.answer_map = {0, 1, 2, 3};
    return spec;
}

/**
 * Symmetric-vs-antisymmetric discrimination: label 0 is a uniformly random
 * symmetric Bell state (prior 1/2), label 1 the antisymmetric one (prior
 * 1/2). The honest prover answers with a SWAP test, deterministically.
 */
inline ProtocolSpec sym_antisym_protocol() {
    ProtocolSpec spec;
    spec.name = "sym-antisym";
    spec.dims = {2, 2};
    spec.a_factors = {0};
    spec.hypotheses.push_back({0, 0.5, detail::symmetric_bell_mixture()});
    spec.hypotheses.push_back({1, 0.5, DensityMatrix(bell_state(kPsiMinus))});
    for (int i : {kPhiPlus, kPhiMinus, kPsiPlus}) {
        spec.ensemble.push_back({0, 1.0 / 6.0, bell_ket(i)});
    }
    spec.ensemble.push_back({1, 0.5, bell_ket(kPsiMinus)});
    spec.honest_measurement = swap_test_povm();
    spec.answer_map = {0, 1};
    return spec;
}

/**
 * Two parallel rounds conditioned on equal round types: both rounds carry
 * independent uniform symmetric Bell states, or both carry the antisymmetric
 * one. Factor order is [A1, B1, A2, B2], so the A side holds factors {0,2}.
 * A SWAP test on either pair still answers perfectly.
 */
inline ProtocolSpec sym_antisym_two_round() {
    ProtocolSpec spec;
    spec.name = "sym-antisym-2";
    spec.dims = {2, 2, 2, 2};
    spec.a_factors = {0, 2};

    const DensityMatrix rho0 = detail::symmetric_bell_mixture();
    const Operator rho00 = kron(rho0.op(), rho0.op());
    const Operator rho11 = kron(bell_state(kPsiMinus), bell_state(kPsiMinus));
    spec.hypotheses.push_back({0, 0.5, DensityMatrix(rho00)});
    spec.hypotheses.push_back({1, 0.5, DensityMatrix(rho11)});

    for (int i : {kPhiPlus, kPhiMinus, kPsiPlus}) {
        for (int j : {kPhiPlus, kPhiMinus, kPsiPlus}) {
            spec.ensemble.push_back({0, 1.0 / 18.0, kron(bell_ket(i), bell_ket(j))});
        }
    }
    spec.ensemble.push_back({1, 0.5, kron(bell_ket(kPsiMinus), bell_ket(kPsiMinus))});

    const Povm swap1 = swap_test_povm();
    const Operator id4 = identity_operator({2, 2});
    Povm honest;
    honest.elements.push_back(kron(swap1.elements[0], id4));
    honest.elements.push_back(kron(swap1.elements[1], id4));
    spec.honest_measurement = std::move(honest);
    spec.answer_map = {0, 1};
    return spec;
}

/**
 * The generic family: quantum inputs of local dimensions d_a, d_b plus
 * classical information whose joint function takes k distinct values. Only
 * the parameters matter for anything computed here; the honest operation is
 * abstract, and the challenge label is uniform on {0..k-1}.
 */
inline ProtocolSpec generic_qpv(std::size_t d_a, std::size_t d_b, std::size_t k) {
    if (d_a < 1 || d_b < 1 || k < 1) {
        throw std::invalid_argument("generic_qpv: parameters must be positive");
    }
    ProtocolSpec spec;
    spec.name = "qpv-generic";
    spec.dims = {d_a, d_b};
    spec.a_factors = {0};
    spec.abstract = true;
    spec.d_a = d_a;
    spec.d_b = d_b;
    spec.k = k;
    return spec;
}

}  // namespace qpv
