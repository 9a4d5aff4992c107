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
 * Executable attacker and prover behaviors. An attack consists of one local
 * splitting channel per attacker, a single simultaneous exchange of the
 * "sent" registers, one final POVM per attacker on (kept, received), and
 * per-attacker answer rules that may consult shared randomness and may
 * output no answer. Everything here is exact density-matrix propagation;
 * the Monte Carlo module samples from the distributions computed here.
 */

#pragma once

#include <functional>
#include <map>
#include <variant>

#include "qpv/protocols.hpp"

namespace qpv {

/**
 * A local channel splitting one attacker's input into a kept and a sent
 * register, given by Kraus operators of shape (d_kept*d_sent) x d_in with
 * output factor order [kept, sent].
 */
struct SplitChannel {
    std::vector<CMat> kraus;
    std::size_t d_in = 1, d_kept = 1, d_sent = 1;

    void validate() const {
        if (kraus.empty()) {
            throw std::invalid_argument("SplitChannel: no Kraus operators");
        }
        CMat sum(d_in, d_in);
        for (const CMat &k : kraus) {
            if (k.rows() != d_kept * d_sent || k.cols() != d_in) {
                throw std::invalid_argument("SplitChannel: Kraus shape mismatch");
            }
            sum += k.adjoint() * k;
        }
        if (max_abs_diff(sum, CMat::identity(d_in)) > 1e-10) {
            throw std::invalid_argument("SplitChannel: not trace preserving");
        }
    }

    /// Apply to a d_in x d_in operator; result is on factors [kept, sent].
    CMat apply(const CMat &rho) const {
        CMat out(d_kept * d_sent, d_kept * d_sent);
        for (const CMat &k : kraus) {
            out += k * rho * k.adjoint();
        }
        return out;
    }
};

/// Answer rule: (final POVM outcome, shared randomness) -> label or kNoAnswer.
using AnswerRule = std::function<int(std::size_t outcome, std::size_t r)>;

struct CircuitAttack {
    SplitChannel split_a, split_b;
    Povm final_a;  // acts on [kept_a, sent_b]
    Povm final_b;  // acts on [sent_a, kept_b]
    std::size_t randomness = 1;  // shared randomness alphabet size, uniform
    AnswerRule answer_a, answer_b;
};

/**
 * The lossy teleport-and-guess attack on the generic family: A teleports her
 * input to B over a maximally entangled pair; both play only when the
 * correction index is zero and B's uniform guess of the challenge is right,
 * otherwise they answer nothing. Exact rates are closed-form.
 */
struct TeleportGuess {
    std::size_t d = 2;
    std::size_t k = 1;
};

struct AttackStrategy {
    std::string name;
    bool classical_only = false;
    std::variant<CircuitAttack, TeleportGuess> body;
    std::map<std::string, double> params;

    bool is_circuit() const { return std::holds_alternative<CircuitAttack>(body); }
    const CircuitAttack &circuit() const { return std::get<CircuitAttack>(body); }
    const TeleportGuess &teleport() const { return std::get<TeleportGuess>(body); }
};

struct ExactRates {
    double success = 0.0;     // both answer, agree, and match the label
    double conclusive = 0.0;  // both answer
    double agree = 0.0;       // both answer with the same label
    double conditional = 0.0; // success / conclusive
};

// ---------------------------------------------------------------------------
// Exact propagation engine.

namespace detail {

inline std::size_t dims_product(const std::vector<std::size_t> &dims,
                                const std::vector<std::size_t> &factors) {
    std::size_t p = 1;
    for (std::size_t f : factors) {
        p *= dims[f];
    }
    return p;
}

/// Contract the A-side POVM element: R(b',b) = sum_{a,a'} E(a,a') sigma((a',b'),(a,b)).
inline CMat contract_first_group(const CMat &sigma, const CMat &e, std::size_t da,
                                 std::size_t db) {
    CMat r(db, db);
    for (std::size_t bp = 0; bp < db; ++bp) {
        for (std::size_t b = 0; b < db; ++b) {
            cplx s = 0.0;
            for (std::size_t a = 0; a < da; ++a) {
                for (std::size_t ap = 0; ap < da; ++ap) {
                    s += e(a, ap) * sigma(ap * db + bp, a * db + b);
                }
            }
            r(bp, b) = s;
        }
    }
    return r;
}

}  // namespace detail

/**
 * State after both splitting channels, for one hypothesis. Factor order of
 * the result is [kept_a, sent_a, kept_b, sent_b].
 */
inline Operator post_split_state(const ProtocolSpec &spec, const CircuitAttack &ca,
                                 std::size_t hyp_index) {
    const auto a_factors = spec.a_factors;
    const auto b_factors = spec.b_factors();
    if (detail::dims_product(spec.dims, a_factors) != ca.split_a.d_in ||
        detail::dims_product(spec.dims, b_factors) != ca.split_b.d_in) {
        throw std::invalid_argument("post_split_state: channel and protocol dims mismatch");
    }
    std::vector<std::size_t> perm = a_factors;
    perm.insert(perm.end(), b_factors.begin(), b_factors.end());
    const Operator rho = permute_factors(spec.hypotheses.at(hyp_index).state.op(), perm);

    const std::size_t out_dim =
        ca.split_a.d_kept * ca.split_a.d_sent * ca.split_b.d_kept * ca.split_b.d_sent;
    CMat sigma(out_dim, out_dim);
    for (const CMat &ka : ca.split_a.kraus) {
        for (const CMat &kb : ca.split_b.kraus) {
            const CMat kab = kron(ka, kb);
            sigma += kab * rho.mat() * kab.adjoint();
        }
    }
    return Operator(std::move(sigma), {ca.split_a.d_kept, ca.split_a.d_sent, ca.split_b.d_kept,
                                       ca.split_b.d_sent});
}

/**
 * Joint distribution of the two final POVM outcomes for one hypothesis:
 * P(oa, ob) with A measuring [kept_a, sent_b] and B measuring [sent_a, kept_b].
 */
inline std::vector<std::vector<double>> joint_outcome_distribution(const ProtocolSpec &spec,
                                                                   const CircuitAttack &ca,
                                                                   std::size_t hyp_index) {
    const Operator sigma = post_split_state(spec, ca, hyp_index);
    // [kept_a, sent_a, kept_b, sent_b] -> [kept_a, sent_b, sent_a, kept_b]
    const Operator exchanged = permute_factors(sigma, {0, 3, 1, 2});
    const std::size_t da = ca.split_a.d_kept * ca.split_b.d_sent;
    const std::size_t db = ca.split_a.d_sent * ca.split_b.d_kept;
    if (ca.final_a.dim() != da || ca.final_b.dim() != db) {
        throw std::invalid_argument("joint_outcome_distribution: POVM dims mismatch");
    }

    std::vector<std::vector<double>> p(ca.final_a.size(), std::vector<double>(ca.final_b.size()));
    for (std::size_t oa = 0; oa < ca.final_a.size(); ++oa) {
        const CMat r =
            detail::contract_first_group(exchanged.mat(), ca.final_a.elements[oa].mat(), da, db);
        for (std::size_t ob = 0; ob < ca.final_b.size(); ++ob) {
            p[oa][ob] = std::max(0.0, hs_inner(ca.final_b.elements[ob].mat(), r));
        }
    }
    return p;
}

/**
 * Exact success/conclusive/agreement rates of an attack on a protocol, by
 * full density-matrix propagation (circuit attacks) or closed form (the
 * teleport-and-guess attack).
 */
inline ExactRates evaluate_strategy_exact(const ProtocolSpec &spec, const AttackStrategy &s) {
    ExactRates rates;
    if (!s.is_circuit()) {
        const TeleportGuess &tg = s.teleport();
        if (!spec.abstract) {
            throw std::invalid_argument("teleport-guess runs on the generic protocol family");
        }
        if (spec.k != tg.k || spec.max_input_dim() != tg.d) {
            throw std::invalid_argument("teleport-guess parameters do not match the protocol");
        }
        rates.conclusive = 1.0 / (static_cast<double>(tg.k) * tg.d * tg.d);
        rates.success = rates.conclusive;
        rates.agree = rates.conclusive;
        rates.conditional = 1.0;
        return rates;
    }

    const CircuitAttack &ca = s.circuit();
    if (!ca.answer_a || !ca.answer_b) {
        throw std::invalid_argument("evaluate_strategy_exact: answer rule missing");
    }
    for (std::size_t h = 0; h < spec.hypotheses.size(); ++h) {
        const auto p = joint_outcome_distribution(spec, ca, h);
        const int label = spec.hypotheses[h].label;
        const double prior = spec.hypotheses[h].prior;
        for (std::size_t oa = 0; oa < p.size(); ++oa) {
            for (std::size_t ob = 0; ob < p[oa].size(); ++ob) {
                if (p[oa][ob] == 0.0) {
                    continue;
                }
                for (std::size_t r = 0; r < ca.randomness; ++r) {
                    const int ans_a = ca.answer_a(oa, r);
                    const int ans_b = ca.answer_b(ob, r);
                    if (ans_a == kNoAnswer || ans_b == kNoAnswer) {
                        continue;
                    }
                    const double w = prior * p[oa][ob] / static_cast<double>(ca.randomness);
                    rates.conclusive += w;
                    if (ans_a == ans_b) {
                        rates.agree += w;
                        if (ans_a == label) {
                            rates.success += w;
                        }
                    }
                }
            }
        }
    }
    rates.conditional = rates.conclusive > 0.0 ? rates.success / rates.conclusive : 0.0;
    return rates;
}

// ---------------------------------------------------------------------------
// Channel building blocks.

/**
 * Measure the d-dimensional input in the computational basis, keep one
 * classical copy of the outcome and send another: rho -> sum_i <i|rho|i>
 * |ii><ii|.
 */
inline SplitChannel measure_keep_send_channel(std::size_t d) {
    SplitChannel ch;
    ch.d_in = d;
    ch.d_kept = d;
    ch.d_sent = d;
    for (std::size_t i = 0; i < d; ++i) {
        CMat k(d * d, d);
        k(i * d + i, i) = 1.0;
        ch.kraus.push_back(std::move(k));
    }
    return ch;
}

/**
 * Lossless routing of a two-factor input [x0, x1] of equal dimension d:
 * keeps one factor and sends the other, no measurement.
 */
inline SplitChannel route_channel(std::size_t d, bool keep_first) {
    SplitChannel ch;
    ch.d_in = d * d;
    ch.d_kept = d;
    ch.d_sent = d;
    CMat k(d * d, d * d);
    for (std::size_t x0 = 0; x0 < d; ++x0) {
        for (std::size_t x1 = 0; x1 < d; ++x1) {
            const std::size_t in = x0 * d + x1;
            const std::size_t out = keep_first ? (x0 * d + x1) : (x1 * d + x0);
            k(out, in) = 1.0;
        }
    }
    ch.kraus.push_back(std::move(k));
    return ch;
}

// ---------------------------------------------------------------------------
// Shipped attack strategies.

/**
 * Both attackers measure their qubit in the computational basis, exchange
 * the bits, and answer the XOR: 0 = symmetric, 1 = antisymmetric.
 */
inline AttackStrategy locc_xor() {
    AttackStrategy s;
    s.name = "locc-xor";
    s.classical_only = true;
    CircuitAttack ca;
    ca.split_a = measure_keep_send_channel(2);
    ca.split_b = measure_keep_send_channel(2);
    ca.final_a = computational_povm({2, 2});
    ca.final_b = computational_povm({2, 2});
    const auto xor_rule = [](std::size_t outcome, std::size_t) -> int {
        return static_cast<int>((outcome >> 1) ^ (outcome & 1));
    };
    ca.answer_a = xor_rule;
    ca.answer_b = xor_rule;
    s.body = std::move(ca);
    return s;
}

/**
 * Two-round variant: measure both pairs in the computational basis, answer
 * antisymmetric only when both rounds gave unequal outcomes.
 */
inline AttackStrategy locc_xor_two_round() {
    AttackStrategy s;
    s.name = "locc-xor-2";
    s.classical_only = true;
    CircuitAttack ca;
    ca.split_a = measure_keep_send_channel(4);
    ca.split_b = measure_keep_send_channel(4);
    ca.final_a = computational_povm({4, 4});
    ca.final_b = computational_povm({4, 4});
    // Outcome encodes (own bits, received bits); own = (a1,a2), received = (b1,b2).
    const auto rule = [](std::size_t outcome, std::size_t) -> int {
        const std::size_t own = outcome / 4, other = outcome % 4;
        const std::size_t x1 = (own >> 1) ^ (other >> 1);
        const std::size_t x2 = (own & 1) ^ (other & 1);
        return (x1 == 1 && x2 == 1) ? 1 : 0;
    };
    ca.answer_a = rule;
    ca.answer_b = rule;
    s.body = std::move(ca);
    return s;
}

/**
 * Computational measurement distinguishes the Phi pair from the Psi pair;
 * shared randomness picks one of the two candidates, so both attackers
 * always emit the same label.
 */
inline AttackStrategy locc_bell_computational_guess() {
    AttackStrategy s;
    s.name = "locc-bell-guess";
    s.classical_only = true;
    CircuitAttack ca;
    ca.split_a = measure_keep_send_channel(2);
    ca.split_b = measure_keep_send_channel(2);
    ca.final_a = computational_povm({2, 2});
    ca.final_b = computational_povm({2, 2});
    ca.randomness = 2;
    const auto rule = [](std::size_t outcome, std::size_t r) -> int {
        const bool psi_class = ((outcome >> 1) ^ (outcome & 1)) == 1;
        if (psi_class) {
            return r == 0 ? kPsiPlus : kPsiMinus;
        }
        return r == 0 ? kPhiPlus : kPhiMinus;
    };
    ca.answer_a = rule;
    ca.answer_b = rule;
    s.body = std::move(ca);
    return s;
}

/**
 * Quantum-communication attack on the two-round protocol: A keeps her half
 * of pair 1 and forwards her half of pair 2, B does the opposite, so each
 * attacker assembles one complete pair and reads off its type with a local
 * Bell measurement.
 */
inline AttackStrategy loqc_exchange() {
    AttackStrategy s;
    s.name = "loqc-exchange";
    s.classical_only = false;
    CircuitAttack ca;
    ca.split_a = route_channel(2, /*keep_first=*/true);   // keeps A1, sends A2
    ca.split_b = route_channel(2, /*keep_first=*/false);  // keeps B2, sends B1
    ca.final_a = bell_povm();  // on (A1, B1)
    ca.final_b = bell_povm();  // on (A2, B2)
    const auto rule = [](std::size_t outcome, std::size_t) -> int {
        return outcome == static_cast<std::size_t>(kPsiMinus) ? 1 : 0;
    };
    ca.answer_a = rule;
    ca.answer_b = rule;
    s.body = std::move(ca);
    return s;
}

/// The lossy teleport-and-guess attack with a d-dimensional resource pair.
inline AttackStrategy teleport_guess_attack(std::size_t d, std::size_t k) {
    if (d < 1 || k < 1) {
        throw std::invalid_argument("teleport_guess_attack: parameters must be positive");
    }
    AttackStrategy s;
    s.name = "teleport-guess";
    s.classical_only = false;
    s.body = TeleportGuess{d, k};
    s.params["d"] = static_cast<double>(d);
    s.params["k"] = static_cast<double>(k);
    return s;
}

// ---------------------------------------------------------------------------
// Honest (prover-side) strategies.

struct ProverStrategy {
    std::string name;
    Povm measurement;
    std::vector<int> answer_map;
};

inline ProverStrategy honest_bell_measurement() {
    return {"honest-bell", bell_povm(), {0, 1, 2, 3}};
}

inline ProverStrategy honest_swap_test() {
    return {"honest-swap", swap_test_povm(), {0, 1}};
}

/// Success probability of a prover strategy applied at the honest location.
inline double evaluate_prover_exact(const ProtocolSpec &spec, const ProverStrategy &ps) {
    if (spec.abstract) {
        throw std::invalid_argument("evaluate_prover_exact: abstract protocol");
    }
    double p = 0.0;
    for (const Hypothesis &h : spec.hypotheses) {
        if (h.state.dim() != ps.measurement.dim()) {
            throw std::invalid_argument("evaluate_prover_exact: dimension mismatch");
        }
        for (std::size_t o = 0; o < ps.measurement.size(); ++o) {
            if (ps.answer_map[o] == h.label) {
                p += h.prior * hs_inner(ps.measurement.elements[o].mat(), h.state.mat());
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Validation.

/**
 * Check that the sent register is classical: for every operator-basis input
 * |i><j|, the sent-factor reduction of the channel image must be diagonal
 * (off-diagonal mass <= 1e-10).
 */
inline bool sent_register_is_classical(const SplitChannel &ch) {
    for (std::size_t i = 0; i < ch.d_in; ++i) {
        for (std::size_t j = 0; j < ch.d_in; ++j) {
            CMat unit(ch.d_in, ch.d_in);
            unit(i, j) = 1.0;
            const Operator img(ch.apply(unit), {ch.d_kept, ch.d_sent});
            const Operator sent = partial_trace(img, {1});
            for (std::size_t r = 0; r < ch.d_sent; ++r) {
                for (std::size_t c = 0; c < ch.d_sent; ++c) {
                    if (r != c && std::abs(sent.mat()(r, c)) > 1e-10) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

/**
 * Structural validation of an attack: trace-preserving channels, complete
 * POVMs, total answer rules, and, when the strategy claims to be classical,
 * classical sent registers.
 */
inline void validate_strategy(const AttackStrategy &s, int num_labels) {
    if (!s.is_circuit()) {
        const TeleportGuess &tg = s.teleport();
        if (tg.d < 1 || tg.k < 1) {
            throw std::invalid_argument("validate_strategy: bad teleport parameters");
        }
        return;
    }
    const CircuitAttack &ca = s.circuit();
    ca.split_a.validate();
    ca.split_b.validate();
    ca.final_a.validate();
    ca.final_b.validate();
    if (ca.randomness < 1) {
        throw std::invalid_argument("validate_strategy: empty randomness alphabet");
    }
    for (std::size_t o = 0; o < ca.final_a.size(); ++o) {
        for (std::size_t r = 0; r < ca.randomness; ++r) {
            const int a = ca.answer_a(o, r);
            if (a != kNoAnswer && (a < 0 || a >= num_labels)) {
                throw std::invalid_argument("validate_strategy: answer rule not total");
            }
        }
    }
    for (std::size_t o = 0; o < ca.final_b.size(); ++o) {
        for (std::size_t r = 0; r < ca.randomness; ++r) {
            const int b = ca.answer_b(o, r);
            if (b != kNoAnswer && (b < 0 || b >= num_labels)) {
                throw std::invalid_argument("validate_strategy: answer rule not total");
            }
        }
    }
    if (s.classical_only) {
        if (!sent_register_is_classical(ca.split_a) || !sent_register_is_classical(ca.split_b)) {
            throw std::invalid_argument("validate_strategy: strategy declared classical-only "
                                        "but exchanges a non-classical register");
        }
    }
}

}  // namespace qpv
