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
 * Closed-form and root-finding security bounds: the Werner-state entropy
 * chain that caps quantum-communication attacks on Bell discrimination, the
 * cloning-based improvement, and the loss threshold of the teleport-and-
 * guess attack.
 */

#pragma once

#include <map>

#include "qpv/qinfo.hpp"

namespace qpv {

struct BoundReport {
    std::string name;
    std::map<std::string, double> parameters;
    double value = 0.0;
    std::string kind;        // upper_bound_on_attack | threshold | fidelity
    std::string provenance;  // one-line derivation note
};

/// Werner state alpha |Psi-><Psi-| + (1-alpha) I/4 as a validated state.
inline DensityMatrix werner_state(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("werner_state: alpha must be in [0,1]");
    }
    const Operator p = bell_state(kPsiMinus);
    CMat m = p.mat() * cplx(alpha) + CMat::identity(4) * cplx((1.0 - alpha) / 4.0);
    return DensityMatrix(std::move(m), {2, 2});
}

/**
 * Entropy (bits) of the Werner state from its closed-form spectrum
 * {alpha + (1-alpha)/4} + 3 x {(1-alpha)/4}.
 */
inline double werner_entropy(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("werner_entropy: alpha must be in [0,1]");
    }
    const double big = alpha + (1.0 - alpha) / 4.0;
    const double small = (1.0 - alpha) / 4.0;
    double s = 0.0;
    if (big > 0.0) {
        s -= big * std::log2(big);
    }
    if (small > 0.0) {
        s -= 3.0 * small * std::log2(small);
    }
    return s;
}

/**
 * The unique alpha* in (0.25, 1] with 1 - werner_entropy(alpha*) = e_target,
 * by bisection to |delta alpha| <= 1e-10. Any attack whose swapped-in
 * verifier state is compatible with coherent information e_target must have
 * its Werner weight below this root.
 */
inline double hashing_alpha_root(double e_target = 0.5) {
    if (e_target <= 0.0 || e_target > 1.0) {
        throw std::invalid_argument("hashing_alpha_root: target must be in (0,1]");
    }
    const auto f = [&](double a) { return 1.0 - werner_entropy(a) - e_target; };
    double lo = 0.25, hi = 1.0;
    if (f(hi) < -1e-15) {
        throw std::invalid_argument("hashing_alpha_root: target above achievable range");
    }
    if (f(lo) > 0.0) {
        throw std::invalid_argument("hashing_alpha_root: target below achievable range");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Success probability of guessing Psi- on a Werner state: alpha + (1-alpha)/4.
inline double qc_success_upper(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("qc_success_upper: alpha must be in [0,1]");
    }
    return alpha + (1.0 - alpha) / 4.0;
}

/**
 * Average teleportation fidelity over a resource state with maximally
 * entangled fraction f_ent in local dimension d: (f_ent d + 1)/(d + 1).
 */
inline double teleport_fidelity(double f_ent, std::size_t d) {
    if (f_ent < 0.0 || f_ent > 1.0 || d < 1) {
        throw std::invalid_argument("teleport_fidelity: need f_ent in [0,1], d >= 1");
    }
    const double dd = static_cast<double>(d);
    return (f_ent * dd + 1.0) / (dd + 1.0);
}

/**
 * Upper bound 5/6 - 1/(6d) on the local success probability of unentangled
 * attackers against Bell discrimination in local dimension d, inherited from
 * the optimal asymmetric 1->2 cloning mean.
 */
inline double cloning_bound(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("cloning_bound: d must be >= 2");
    }
    const double dd = static_cast<double>(d);
    return (5.0 * dd - 1.0) / (6.0 * dd);
}

/**
 * Runtime assertion over states produced by implemented splitting
 * strategies: the mean entangled fraction of the two remotely prepared
 * states cannot beat the cloning mean. Not a theorem prover; a check.
 */
inline bool cloning_mean_inequality_check(const DensityMatrix &rho_vavb,
                                          const DensityMatrix &rho_vavc, std::size_t d) {
    const double mean =
        0.5 * (entangled_fraction(rho_vavb, d) + entangled_fraction(rho_vavc, d));
    return mean <= cloning_bound(d) + 1e-9;
}

/// Transmission-rate threshold 1/(k d^2) below which teleport-and-guess wins.
inline double loss_attack_threshold(std::size_t d, std::size_t k) {
    if (d < 1 || k < 1) {
        throw std::invalid_argument("loss_attack_threshold: parameters must be positive");
    }
    return 1.0 / (static_cast<double>(k) * static_cast<double>(d) * static_cast<double>(d));
}

/// Entanglement consumed by the teleport attack: n log2 d ebits.
inline double entanglement_cost(std::uint64_t n_rounds, std::size_t d) {
    if (d < 1) {
        throw std::invalid_argument("entanglement_cost: d must be >= 1");
    }
    return static_cast<double>(n_rounds) * std::log2(static_cast<double>(d));
}

/// The full table of bounds for given parameters, as printed by the CLI.
inline std::vector<BoundReport> all_bound_reports(std::size_t d, std::size_t k) {
    const double alpha_star = hashing_alpha_root(0.5);
    std::vector<BoundReport> out;
    out.push_back({"hashing_alpha_root",
                   {{"e_target", 0.5}},
                   alpha_star,
                   "threshold",
                   "root of 1 - S(Werner(alpha)) = 1/2, bisection"});
    out.push_back({"qc_success_upper",
                   {{"alpha", alpha_star}},
                   qc_success_upper(alpha_star),
                   "upper_bound_on_attack",
                   "Psi- weight of the twirled verifier state at alpha*"});
    out.push_back({"qc_success_upper_rounded_alpha",
                   {{"alpha", 0.902}},
                   qc_success_upper(0.902),
                   "upper_bound_on_attack",
                   "same bound at the rounded alpha = 0.902, reported for comparison"});
    if (d >= 2) {
        out.push_back({"cloning_bound",
                       {{"d", static_cast<double>(d)}},
                       cloning_bound(d),
                       "upper_bound_on_attack",
                       "optimal asymmetric 1->2 cloning mean, (5d-1)/(6d)"});
        out.push_back({"teleport_fidelity_perfect",
                       {{"f_ent", 1.0}, {"d", static_cast<double>(d)}},
                       teleport_fidelity(1.0, d),
                       "fidelity",
                       "(F d + 1)/(d + 1) at F = 1"});
        out.push_back({"teleport_fidelity_classical",
                       {{"f_ent", 1.0 / (static_cast<double>(d) * d)}, {"d", static_cast<double>(d)}},
                       teleport_fidelity(1.0 / (static_cast<double>(d) * d), d),
                       "fidelity",
                       "(F d + 1)/(d + 1) at the maximally mixed resource F = 1/d^2"});
    }
    out.push_back({"loss_attack_threshold",
                   {{"d", static_cast<double>(d)}, {"k", static_cast<double>(k)}},
                   loss_attack_threshold(d, k),
                   "threshold",
                   "teleport-and-guess answers 1/(k d^2) of rounds perfectly"});
    out.push_back({"entanglement_cost_per_round",
                   {{"d", static_cast<double>(d)}},
                   entanglement_cost(1, d),
                   "threshold",
                   "log2 d ebits per round consumed by the teleport attack"});
    return out;
}

}  // namespace qpv
