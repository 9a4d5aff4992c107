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
 * The verification battery: every headline number of the library checked at
 * its pinned tolerance, one result per criterion. The CLI `suite` command
 * and the acceptance test binary both run this.
 */

#pragma once

#include <chrono>

#include "qpv/registry.hpp"
#include "qpv/serialize.hpp"

namespace qpv {

struct SuiteOptions {
    std::uint64_t seed = 7;
    bool quick = false;  // 1e4 Monte Carlo rounds instead of 1e6
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;    // human-readable measured values
    double seconds = 0.0;  // wall time, excluded from the canonical bundle
    json measured = json::object();
};

namespace suite_detail {

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

// --- criterion bodies -------------------------------------------------------

inline CriterionResult sdp_single_round() {
    CriterionResult r{1, "single-round PPT optimum 5/6 with exact certificate"};
    Timer t;
    const PrimalSolution sol = solve(build(sym_antisym_protocol()), 1e-7);
    const auto [cert_ok, bound] = verify_dual_exact(certificates::sym_antisym_problem(),
                                                    certificates::sym_antisym_certificate());
    r.seconds = t.seconds();
    const double err = std::abs(sol.value - 5.0 / 6.0);
    const bool bound_exact = cert_ok && bound == Rational(5, 6);
    r.pass = err <= 1e-5 && bound_exact && r.seconds < 5.0;
    r.measured = {{"value", round_sig(sol.value)},
                  {"error", round_sig(err)},
                  {"certificate_valid", cert_ok},
                  {"certificate_bound", bound.str()},
                  {"certified_gap", round_sig(sol.gap)}};
    r.detail = "value=" + fmt(sol.value) + " err=" + fmt(err) + " cert=" + bound.str();
    return r;
}

inline CriterionResult sdp_two_round() {
    CriterionResult r{2, "two-round PPT optimum 17/18, certificate and Q1 spectrum"};
    Timer t;
    const PrimalSolution sol = solve(build(sym_antisym_two_round()), 1e-7);
    const auto problem = certificates::sym_antisym_two_round_problem();
    const auto cert = certificates::sym_antisym_two_round_certificate();
    const auto [cert_ok, bound] = verify_dual_exact(problem, cert);
    // Spectrum of Q1 lands on {0, 1/18, 1/9}.
    const HermitianEigen eg = hermitian_eigen(cert.q[1].to_cmat());
    double spectrum_err = 0.0;
    for (double lam : eg.eigenvalues) {
        const double d = std::min({std::abs(lam), std::abs(lam - 1.0 / 18.0),
                                   std::abs(lam - 1.0 / 9.0)});
        spectrum_err = std::max(spectrum_err, d);
    }
    r.seconds = t.seconds();
    const double err = std::abs(sol.value - 17.0 / 18.0);
    r.pass = err <= 1e-5 && cert_ok && bound == Rational(17, 18) && spectrum_err <= 1e-9 &&
             r.seconds < 60.0;
    r.measured = {{"value", round_sig(sol.value)},
                  {"error", round_sig(err)},
                  {"certificate_valid", cert_ok},
                  {"certificate_bound", bound.str()},
                  {"q1_spectrum_error", round_sig(spectrum_err)}};
    r.detail = "value=" + fmt(sol.value) + " err=" + fmt(err) + " cert=" + bound.str() +
               " q1_spec_err=" + fmt(spectrum_err);
    return r;
}

inline CriterionResult sdp_bell_and_loss() {
    CriterionResult r{3, "Bell-protocol PPT optimum 1/2, constant under loss"};
    Timer t;
    const SdpProblem p = build(bell_protocol());
    const double v = solve(p, 1e-7).value;
    bool ok = std::abs(v - 0.5) <= 1e-4;
    json sweep = json::object();
    for (double eta : {0.25, 0.5, 0.75, 1.0}) {
        const double cond = solve_with_loss(p, eta, 1e-6);
        sweep[fmt(eta)] = round_sig(cond);
        ok = ok && std::abs(cond - 0.5) <= 1e-3;
    }
    r.seconds = t.seconds();
    r.pass = ok;
    r.measured = {{"value", round_sig(v)}, {"loss_sweep", sweep}};
    r.detail = "value=" + fmt(v) + " sweep=" + sweep.dump();
    return r;
}

inline CriterionResult strategy_exactness() {
    CriterionResult r{4, "exact strategy values and the 1/18 separation"};
    Timer t;
    const double xr = evaluate_strategy_exact(sym_antisym_protocol(), locc_xor()).success;
    const double x2 =
        evaluate_strategy_exact(sym_antisym_two_round(), locc_xor_two_round()).success;
    const double bg =
        evaluate_strategy_exact(bell_protocol(), locc_bell_computational_guess()).success;
    const double lq = evaluate_strategy_exact(sym_antisym_two_round(), loqc_exchange()).success;
    const double separation = lq - x2;
    r.seconds = t.seconds();
    r.pass = std::abs(xr - 5.0 / 6.0) <= 1e-12 && std::abs(x2 - 17.0 / 18.0) <= 1e-12 &&
             std::abs(bg - 0.5) <= 1e-12 && std::abs(lq - 1.0) <= 1e-12 &&
             std::abs(separation - 1.0 / 18.0) <= 1e-12;
    r.measured = {{"locc_xor", round_sig(xr)},
                  {"locc_xor_two_round", round_sig(x2)},
                  {"bell_guess", round_sig(bg)},
                  {"loqc_exchange", round_sig(lq)},
                  {"loqc_locc_separation", round_sig(separation)}};
    r.detail = "5/6=" + fmt(xr) + " 17/18=" + fmt(x2) + " 1/2=" + fmt(bg) + " 1=" + fmt(lq) +
               " separation=" + fmt(separation);
    return r;
}

inline CriterionResult monte_carlo_consistency(const SuiteOptions &opts) {
    CriterionResult r{5, "Monte Carlo inside Wilson-99.9 of exact for all shipped pairs"};
    Timer t;
    const std::uint64_t rounds = opts.quick ? 10000 : 1000000;
    bool ok = true;
    json per_pair = json::object();
    std::uint64_t idx = 0;
    for (const ShippedPair &sp : shipped_pairs()) {
        const ProtocolSpec spec = make_protocol(sp.protocol, sp.d, sp.k);
        const AttackStrategy strat = make_strategy(sp.strategy, sp.d, sp.k);
        const CrossCheckReport cc =
            cross_check(spec, strat, rounds, child_seed(opts.seed, 100 + idx), 4);
        ok = ok && !cc.flagged();
        per_pair[sp.protocol + "/" + sp.strategy] =
            json{{"rate", round_sig(cc.stats.success_rate)},
                 {"exact", round_sig(cc.exact.success)},
                 {"flagged", cc.flagged()}};
        ++idx;
    }
    r.seconds = t.seconds();
    r.pass = ok && (opts.quick || r.seconds < 120.0);
    r.measured = {{"rounds", rounds}, {"pairs", per_pair}};
    r.detail = std::to_string(rounds) + " rounds/pair, flags=" + (ok ? "0" : ">0");
    return r;
}

inline CriterionResult hashing_chain() {
    CriterionResult r{6, "hashing-bound chain: alpha* root and 0.926 cap"};
    Timer t;
    const double alpha_star = hashing_alpha_root(0.5);
    const double root_err = std::abs(1.0 - werner_entropy(alpha_star) - 0.5);
    const double cap = qc_success_upper(alpha_star);
    r.seconds = t.seconds();
    r.pass = root_err <= 1e-8 && alpha_star <= 0.902 && cap >= 0.925 && cap <= 0.926;
    r.measured = {{"alpha_star", round_sig(alpha_star)},
                  {"root_error", round_sig(root_err)},
                  {"qc_success_upper", round_sig(cap)}};
    r.detail = "alpha*=" + fmt(alpha_star) + " root_err=" + fmt(root_err) + " cap=" + fmt(cap);
    return r;
}

inline CriterionResult cloning_chain() {
    CriterionResult r{7, "cloning chain: 3/4 bound and teleportation fidelities"};
    Timer t;
    bool ok = cloning_bound(2) == 0.75;
    json fid = json::object();
    for (std::size_t d : {2, 3, 4}) {
        const double perfect = teleport_fidelity(1.0, d);
        const double classical = teleport_fidelity(1.0 / (static_cast<double>(d) * d), d);
        fid[std::to_string(d)] = {{"perfect", round_sig(perfect)},
                                  {"classical", round_sig(classical)}};
        ok = ok && std::abs(perfect - 1.0) <= 1e-15 &&
             std::abs(classical - 1.0 / static_cast<double>(d)) <= 1e-15;
    }
    r.seconds = t.seconds();
    r.pass = ok;
    r.measured = {{"cloning_bound_2", round_sig(cloning_bound(2))}, {"fidelities", fid}};
    r.detail = "bound(2)=" + fmt(cloning_bound(2));
    return r;
}

inline CriterionResult loss_attack(const SuiteOptions &opts) {
    CriterionResult r{8, "teleport-and-guess: perfect conclusive rounds at rate 1/(k d^2)"};
    Timer t;
    const std::uint64_t rounds = opts.quick ? 10000 : 1000000;
    bool ok = std::abs(entanglement_cost(100, 2) - 100.0) == 0.0;
    json per_cfg = json::object();
    std::uint64_t idx = 0;
    for (const auto &[d, k] : std::vector<std::pair<std::size_t, std::size_t>>{
             {2, 1}, {2, 2}, {3, 2}}) {
        const ProtocolSpec spec = generic_qpv(d, d, k);
        const AttackStrategy strat = teleport_guess_attack(d, k);
        const ExactRates exact = evaluate_strategy_exact(spec, strat);
        const TrialStats stats =
            simulate(spec, strat, rounds, child_seed(opts.seed, 200 + idx), 4);
        const WilsonInterval w = wilson_interval(stats.conclusive, stats.total, kZ999);
        const double target = 1.0 / (static_cast<double>(k) * d * d);
        const bool cfg_ok = exact.conditional == 1.0 && std::abs(exact.conclusive - target) <= 1e-12 &&
                            target >= w.lo && target <= w.hi &&
                            stats.successes == stats.conclusive;
        ok = ok && cfg_ok;
        per_cfg["d" + std::to_string(d) + "k" + std::to_string(k)] =
            json{{"exact_conclusive", round_sig(exact.conclusive)},
                 {"mc_conclusive", round_sig(stats.conclusive_rate)},
                 {"ok", cfg_ok}};
        ++idx;
    }
    r.seconds = t.seconds();
    r.pass = ok;
    r.measured = {{"rounds", rounds}, {"configs", per_cfg},
                  {"entanglement_cost_100_2", round_sig(entanglement_cost(100, 2))}};
    r.detail = per_cfg.dump();
    return r;
}

inline CriterionResult property_battery(const SuiteOptions &opts) {
    CriterionResult r{9, "qcore property battery"};
    Timer t;
    SplitMix64 rng(child_seed(opts.seed, 300));
    bool ok = true;
    json measured = json::object();

    // Partial transpose involution and trace preservation on random states.
    double pt_err = 0.0, trace_err = 0.0;
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_density_matrix({2, 2, 2}, rng);
        const Operator back = partial_transpose(partial_transpose(rho.op(), 1), 1);
        pt_err = std::max(pt_err, max_abs_diff(back.mat(), rho.mat()));
        const Operator red = partial_trace(rho.op(), {0, 2});
        trace_err = std::max(trace_err,
                             std::abs(red.mat().trace().real() - rho.mat().trace().real()));
    }
    ok = ok && pt_err <= 1e-13 && trace_err <= 1e-12;
    measured["pt_involution_error"] = round_sig(pt_err);
    measured["trace_preservation_error"] = round_sig(trace_err);

    // Werner twirl: U (x) U invariance over 100 Haar samples.
    double commutator = 0.0, invariance = 0.0;
    const DensityMatrix rho = random_density_matrix({2, 2}, rng);
    const DensityMatrix tw = werner_twirl(rho);
    for (int i = 0; i < 100; ++i) {
        const Operator u = random_local_unitary(2, rng);
        const CMat uu = kron(u.mat(), u.mat());
        commutator = std::max(commutator, max_abs_diff(uu * tw.mat(), tw.mat() * uu));
        const DensityMatrix conj(Operator(uu * rho.mat() * uu.adjoint(), {2, 2}));
        invariance = std::max(invariance, max_abs_diff(werner_twirl(conj).mat(), tw.mat()));
    }
    ok = ok && commutator <= 1e-7 && invariance <= 1e-8;
    measured["twirl_commutator"] = round_sig(commutator);
    measured["twirl_invariance_error"] = round_sig(invariance);

    // Entropy bounds on random states.
    bool entropy_ok = true;
    for (int i = 0; i < 10; ++i) {
        const DensityMatrix s = random_density_matrix({2, 2}, rng);
        const double e = von_neumann_entropy(s);
        entropy_ok = entropy_ok && e >= 0.0 && e <= 2.0 + 1e-12;
    }
    ok = ok && entropy_ok;
    measured["entropy_bounds_ok"] = entropy_ok;

    // POVM sampling frequencies vs exact probabilities.
    const std::uint64_t samples = opts.quick ? 100000 : 1000000;
    const DensityMatrix target = random_density_matrix({2, 2}, rng);
    const Povm povm = bell_povm();
    std::vector<std::uint64_t> counts(povm.size());
    for (std::uint64_t i = 0; i < samples; ++i) {
        ++counts[sample_povm(target, povm, rng)];
    }
    bool freq_ok = true;
    for (std::size_t o = 0; o < povm.size(); ++o) {
        const double exact = hs_inner(povm.elements[o].mat(), target.mat());
        const WilsonInterval w = wilson_interval(counts[o], samples, kZ999);
        freq_ok = freq_ok && exact >= w.lo && exact <= w.hi;
    }
    ok = ok && freq_ok;
    measured["povm_frequencies_ok"] = freq_ok;

    // Support orthogonality on the three reference pairs.
    const DensityMatrix phi_plus(bell_state(kPhiPlus));
    const DensityMatrix psi_minus(bell_state(kPsiMinus));
    const bool pair1 = supports_orthogonal(phi_plus, psi_minus);
    const bool pair2 = supports_orthogonal(phi_plus, phi_plus);
    const Operator split =
        post_split_state(sym_antisym_two_round(), loqc_exchange().circuit(), 1);
    const DensityMatrix rho_pair(partial_trace(split, {1, 2}));
    const DensityMatrix rho_prod(
        kron(partial_trace(split, {1}), partial_trace(split, {2})));
    const bool pair3 = supports_orthogonal(rho_pair, rho_prod);
    ok = ok && pair1 && !pair2 && !pair3;
    measured["supports_orthogonal"] = json{{"bell_pair", pair1},
                                           {"self", pair2},
                                           {"split_vs_product", pair3}};

    r.seconds = t.seconds();
    r.pass = ok;
    r.measured = measured;
    r.detail = measured.dump();
    return r;
}

inline std::vector<CriterionResult> run_criteria_1_to_9(const SuiteOptions &opts) {
    return {sdp_single_round(), sdp_two_round(),      sdp_bell_and_loss(),
            strategy_exactness(), monte_carlo_consistency(opts), hashing_chain(),
            cloning_chain(),      loss_attack(opts),  property_battery(opts)};
}

inline ReportBundle bundle_from(const std::vector<CriterionResult> &criteria,
                                const SuiteOptions &opts) {
    ReportBundle b;
    b.command = "suite";
    b.config = {{"seed", opts.seed}, {"quick", opts.quick}};
    b.seed = opts.seed;
    for (const CriterionResult &c : criteria) {
        b.results.push_back(
            json{{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"measured", c.measured}});
    }
    return b;
}

inline CriterionResult reproducibility(const SuiteOptions &opts) {
    CriterionResult r{10, "byte-identical bundles on rerun with the same seed"};
    Timer t;
    SuiteOptions quick = opts;
    quick.quick = true;
    const std::string first = bundle_from(run_criteria_1_to_9(quick), quick).dump();
    const std::string second = bundle_from(run_criteria_1_to_9(quick), quick).dump();
    r.seconds = t.seconds();
    r.pass = first == second;
    r.measured = {{"bytes", first.size()}, {"identical", r.pass}};
    r.detail = "bundle bytes=" + std::to_string(first.size()) +
               (r.pass ? " identical" : " DIFFER");
    return r;
}

}  // namespace suite_detail

struct SuiteReport {
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
    ReportBundle bundle;
};

/// Run the full battery; criterion 10 reruns a quick pass twice internally.
inline SuiteReport run_suite(const SuiteOptions &opts) {
    SuiteReport report;
    report.criteria = suite_detail::run_criteria_1_to_9(opts);
    report.criteria.push_back(suite_detail::reproducibility(opts));
    report.all_pass = true;
    for (const CriterionResult &c : report.criteria) {
        report.all_pass = report.all_pass && c.pass;
    }
    report.bundle = suite_detail::bundle_from(report.criteria, opts);
    return report;
}

}  // namespace qpv
