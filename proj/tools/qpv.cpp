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

// Command-line entry point: bounds tables, SDP solves and certificate
// verification, loss sweeps, Monte Carlo simulation with CSV logging, and
// the full verification suite. Every command is a pure function of its
// flags and seed; reruns produce identical bytes.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qpv/suite.hpp"

namespace {

using namespace qpv;

std::string resolve_out_dir(const std::string &flag_value) {
    if (!flag_value.empty()) {
        return flag_value;
    }
    if (const char *env = std::getenv("QPV_LAB_OUT"); env != nullptr && *env != '\0') {
        return env;
    }
    return "qpv_out";
}

void append_csv(const std::string &dir, const RunConfig &cfg, const TrialStats &stats) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = std::filesystem::path(dir) / "results.csv";
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream out(path, std::ios::app);
    if (fresh) {
        out << kCsvHeader << "\n";
    }
    out << csv_row(cfg, stats) << "\n";
}

int cmd_bounds(std::size_t d, std::size_t k, bool as_json) {
    const std::vector<BoundReport> reports = all_bound_reports(d, k);
    if (as_json) {
        ReportBundle bundle;
        bundle.command = "bounds";
        bundle.config = {{"d", d}, {"k", k}};
        for (const BoundReport &b : reports) {
            bundle.results.push_back(bound_to_json(b));
        }
        std::cout << bundle.dump();
        return 0;
    }
    std::printf("%-34s %-22s %-16s %s\n", "bound", "kind", "value", "parameters");
    for (const BoundReport &b : reports) {
        std::string params;
        for (const auto &[key, value] : b.parameters) {
            params += key + "=" + json(round_sig(value)).dump() + " ";
        }
        std::printf("%-34s %-22s %-16.12g %s\n", b.name.c_str(), b.kind.c_str(), b.value,
                    params.c_str());
    }
    return 0;
}

int cmd_sdp_solve(const std::string &protocol, std::size_t d, std::size_t k, double tol,
                  bool as_json) {
    const ProtocolSpec spec = make_protocol(protocol, d, k);
    const PrimalSolution sol = solve(build(spec), tol);
    if (as_json) {
        ReportBundle bundle;
        bundle.command = "sdp solve";
        bundle.config = {{"protocol", protocol}, {"tol", tol}};
        bundle.results.push_back(json{{"value", round_sig(sol.value)},
                                      {"certified_upper_bound", round_sig(sol.certified_upper_bound)},
                                      {"gap", round_sig(sol.gap)},
                                      {"iterations", sol.iterations},
                                      {"completeness_residual", round_sig(sol.completeness_residual)},
                                      {"psd_residual", round_sig(sol.psd_residual)},
                                      {"ppt_residual", round_sig(sol.ppt_residual)}});
        std::cout << bundle.dump();
    } else {
        std::printf("protocol %s: PPT optimum = %.12g\n", protocol.c_str(), sol.value);
        std::printf("  certified upper bound %.12g (gap %.3g), %zu iterations\n",
                    sol.certified_upper_bound, sol.gap, sol.iterations);
        std::printf("  residuals: completeness %.3g, psd %.3g, ppt %.3g\n",
                    sol.completeness_residual, sol.psd_residual, sol.ppt_residual);
    }
    return 0;
}

int cmd_sdp_verify_cert(const std::string &protocol, bool as_json) {
    RationalSdp problem;
    RationalCertificate cert;
    if (protocol == "sym-antisym") {
        problem = certificates::sym_antisym_problem();
        cert = certificates::sym_antisym_certificate();
    } else if (protocol == "sym-antisym-2") {
        problem = certificates::sym_antisym_two_round_problem();
        cert = certificates::sym_antisym_two_round_certificate();
    } else {
        std::cerr << "no stored certificate for protocol '" << protocol << "'\n";
        return 1;
    }
    const auto [valid, bound] = verify_dual_exact(problem, cert);
    const double decimal = static_cast<double>(bound);
    if (as_json) {
        ReportBundle bundle;
        bundle.command = "sdp verify-cert";
        bundle.config = {{"protocol", protocol}};
        bundle.results.push_back(json{{"valid", valid},
                                      {"bound_exact", bound.str()},
                                      {"bound", round_sig(decimal)}});
        std::cout << bundle.dump();
    } else {
        std::printf("certificate for %s: %s, bound = %s = %.12g\n", protocol.c_str(),
                    valid ? "valid" : "INVALID", bound.str().c_str(), decimal);
    }
    return valid ? 0 : 1;
}

int cmd_sdp_loss_sweep(const std::string &protocol, std::size_t d, std::size_t k,
                       std::vector<double> etas, double tol, bool as_json) {
    if (etas.empty()) {
        etas = {0.25, 0.5, 0.75, 1.0};
    }
    const SdpProblem p = build(make_protocol(protocol, d, k));
    ReportBundle bundle;
    bundle.command = "sdp loss-sweep";
    bundle.config = {{"protocol", protocol}, {"eta", etas}, {"tol", tol}};
    for (double eta : etas) {
        const double cond = solve_with_loss(p, eta, tol);
        bundle.results.push_back(json{{"eta", round_sig(eta)}, {"conditional", round_sig(cond)}});
        if (!as_json) {
            std::printf("eta=%-8.4g conditional success = %.12g\n", eta, cond);
        }
    }
    if (as_json) {
        std::cout << bundle.dump();
    }
    return 0;
}

int cmd_simulate(const RunConfig &cfg, bool do_cross_check, bool as_json,
                 const std::string &out_dir) {
    const ProtocolSpec spec = make_protocol(cfg.protocol, cfg.d, cfg.k);
    const AttackStrategy strat = make_strategy(cfg.strategy, cfg.d, cfg.k);
    const TrialStats stats =
        simulate(spec, strat, cfg.rounds, cfg.seed, cfg.thread_chunks);
    append_csv(out_dir, cfg, stats);

    ReportBundle bundle;
    bundle.command = "simulate";
    bundle.config = {{"protocol", cfg.protocol}, {"strategy", cfg.strategy},
                     {"rounds", cfg.rounds},     {"seed", cfg.seed},
                     {"chunks", cfg.thread_chunks}, {"d", cfg.d}, {"k", cfg.k}};
    bundle.seed = cfg.seed;
    bundle.results.push_back(json{{"stats", stats_to_json(stats)},
                                  {"strategy", strategy_to_json(strat)}});
    int rc = 0;
    if (do_cross_check) {
        const CrossCheckReport cc = cross_check_against(stats, evaluate_strategy_exact(spec, strat));
        bundle.results.push_back(json{{"cross_check",
                                       json{{"exact", rates_to_json(cc.exact)},
                                            {"success_flag", cc.success_flag},
                                            {"conclusive_flag", cc.conclusive_flag}}}});
        rc = cc.flagged() ? 3 : 0;
    }
    if (as_json) {
        std::cout << bundle.dump();
    } else {
        std::printf("%s vs %s: %llu rounds, seed %llu\n", cfg.protocol.c_str(),
                    cfg.strategy.c_str(), static_cast<unsigned long long>(cfg.rounds),
                    static_cast<unsigned long long>(cfg.seed));
        std::printf("  success    %.12g  [wilson99 %.12g, %.12g]\n", stats.success_rate,
                    stats.wilson99_success.lo, stats.wilson99_success.hi);
        std::printf("  conclusive %.12g  conditional %.12g\n", stats.conclusive_rate,
                    stats.conditional_rate);
        if (do_cross_check) {
            std::printf("  cross-check: %s\n", rc == 0 ? "consistent" : "FLAGGED");
        }
    }
    return rc;
}

int cmd_suite(std::uint64_t seed, bool quick, bool as_json, const std::string &out_dir) {
    SuiteOptions opts;
    opts.seed = seed;
    opts.quick = quick;
    const SuiteReport report = run_suite(opts);
    if (as_json) {
        std::cout << report.bundle.dump();
    } else {
        for (const CriterionResult &c : report.criteria) {
            std::printf("[%s] %2d. %s  (%s)\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                        c.detail.c_str());
        }
        std::printf("%s\n", report.all_pass ? "all criteria passed" : "CRITERIA FAILED");
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream out(std::filesystem::path(out_dir) / "suite.json");
        out << report.bundle.dump();
    }
    return report.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Position-verification protocol lab: exact strategy evaluation, "
                 "PPT discrimination bounds, analytic security bounds and Monte Carlo."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qpv::kToolName) + " " + qpv::kVersion);

    // bounds
    auto *bounds_cmd = app.add_subcommand("bounds", "Print every analytic bound for (d, k)");
    std::size_t b_d = 2, b_k = 1;
    bool b_json = false;
    bounds_cmd->add_option("--d", b_d, "local input dimension")->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--k", b_k, "number of challenge values")->check(CLI::PositiveNumber);
    bounds_cmd->add_flag("--json", b_json, "emit a JSON bundle");

    // sdp
    auto *sdp_cmd = app.add_subcommand("sdp", "PPT discrimination programs");
    sdp_cmd->require_subcommand(1);
    std::string s_protocol;
    std::size_t s_d = 2, s_k = 1;
    double s_tol = 1e-6;
    bool s_json = false;
    std::vector<double> s_etas;

    auto *solve_cmd = sdp_cmd->add_subcommand("solve", "solve the PPT optimum");
    solve_cmd->add_option("--protocol", s_protocol, "protocol name")->required();
    solve_cmd->add_option("--d", s_d, "generic-family dimension");
    solve_cmd->add_option("--k", s_k, "generic-family challenge count");
    solve_cmd->add_option("--tol", s_tol, "duality-gap tolerance");
    solve_cmd->add_flag("--json", s_json, "emit a JSON bundle");

    auto *cert_cmd = sdp_cmd->add_subcommand("verify-cert", "verify the stored dual certificate");
    cert_cmd->add_option("--protocol", s_protocol, "protocol name")->required();
    cert_cmd->add_flag("--json", s_json, "emit a JSON bundle");

    auto *loss_cmd = sdp_cmd->add_subcommand("loss-sweep", "conditional optimum per answering rate");
    loss_cmd->add_option("--protocol", s_protocol, "protocol name")->required();
    loss_cmd->add_option("--eta", s_etas, "answering rates")->delimiter(',');
    loss_cmd->add_option("--d", s_d, "generic-family dimension");
    loss_cmd->add_option("--k", s_k, "generic-family challenge count");
    loss_cmd->add_option("--tol", s_tol, "duality-gap tolerance");
    loss_cmd->add_flag("--json", s_json, "emit a JSON bundle");

    // simulate
    auto *sim_cmd = app.add_subcommand("simulate", "Monte Carlo run of an attack on a protocol");
    qpv::RunConfig cfg;
    bool sim_cross = false, sim_json = false;
    std::string out_flag;
    sim_cmd->add_option("--protocol", cfg.protocol, "protocol name")->required();
    sim_cmd->add_option("--strategy", cfg.strategy, "strategy name")->required();
    sim_cmd->add_option("--rounds", cfg.rounds, "rounds")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", cfg.seed, "stream seed");
    sim_cmd->add_option("--chunks", cfg.thread_chunks, "chunk count")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--d", cfg.d, "generic-family dimension");
    sim_cmd->add_option("--k", cfg.k, "generic-family challenge count");
    sim_cmd->add_flag("--cross-check", sim_cross, "compare against the exact oracle");
    sim_cmd->add_flag("--json", sim_json, "emit a JSON bundle");
    sim_cmd->add_option("--out", out_flag, "output directory (CSV log)");

    // suite
    auto *suite_cmd = app.add_subcommand("suite", "run the full verification battery");
    std::uint64_t suite_seed = 7;
    bool suite_quick = false, suite_json = false;
    std::string suite_out;
    suite_cmd->add_option("--seed", suite_seed, "stream seed");
    suite_cmd->add_flag("--quick", suite_quick, "10^4 Monte Carlo rounds instead of 10^6");
    suite_cmd->add_flag("--json", suite_json, "emit the JSON bundle");
    suite_cmd->add_option("--out", suite_out, "also write the bundle to this directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds_cmd->parsed()) {
            return cmd_bounds(b_d, b_k, b_json);
        }
        if (solve_cmd->parsed()) {
            return cmd_sdp_solve(s_protocol, s_d, s_k, s_tol, s_json);
        }
        if (cert_cmd->parsed()) {
            return cmd_sdp_verify_cert(s_protocol, s_json);
        }
        if (loss_cmd->parsed()) {
            return cmd_sdp_loss_sweep(s_protocol, s_d, s_k, s_etas, s_tol, s_json);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(cfg, sim_cross, sim_json, resolve_out_dir(out_flag));
        }
        if (suite_cmd->parsed()) {
            return cmd_suite(suite_seed, suite_quick, suite_json, suite_out);
        }
    } catch (const qpv::SolveFailure &e) {
        std::cerr << "solver did not converge: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
