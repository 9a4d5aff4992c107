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
 * Seeded round-by-round simulation of (protocol, strategy) pairs. Outcome
 * distributions come from the exact propagation engine; the simulator draws
 * hypothesis, outcomes and shared randomness per round and tallies loss,
 * agreement and success. The chunk policy, not thread scheduling, defines
 * the random streams, so runs are bit-reproducible at any parallelism.
 */

#pragma once

#include <thread>

#include "qpv/rng.hpp"
#include "qpv/strategies.hpp"

namespace qpv {

/// Two-sided normal quantiles used for the reported confidence intervals.
inline constexpr double kZ99 = 2.5758293035489004;   // 99%
inline constexpr double kZ999 = 3.2905267314919255;  // 99.9%

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval for `successes` out of `total` at quantile z.
inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t total, double z) {
    if (total < 1 || successes > total) {
        throw std::invalid_argument("wilson_interval: need successes <= total, total >= 1");
    }
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct TrialStats {
    std::uint64_t total = 0;
    std::uint64_t conclusive = 0;  // both attackers answered
    std::uint64_t successes = 0;   // both answered, agreed, and were right
    double success_rate = 0.0;     // successes / total
    double conclusive_rate = 0.0;  // conclusive / total
    double conditional_rate = 0.0; // successes / conclusive
    WilsonInterval wilson99_success;
    WilsonInterval wilson99_conclusive;
    WilsonInterval wilson99_conditional;

    void finalize() {
        if (total == 0) {
            throw std::logic_error("TrialStats: no rounds");
        }
        success_rate = static_cast<double>(successes) / static_cast<double>(total);
        conclusive_rate = static_cast<double>(conclusive) / static_cast<double>(total);
        conditional_rate =
            conclusive > 0 ? static_cast<double>(successes) / static_cast<double>(conclusive) : 0.0;
        wilson99_success = wilson_interval(successes, total, kZ99);
        wilson99_conclusive = wilson_interval(conclusive, total, kZ99);
        wilson99_conditional =
            conclusive > 0 ? wilson_interval(successes, conclusive, kZ99) : WilsonInterval{0.0, 1.0};
    }
};

struct RunConfig {
    std::string protocol;
    std::string strategy;
    std::uint64_t rounds = 1000000;
    std::uint64_t seed = 0;
    std::uint32_t thread_chunks = 1;
    std::size_t d = 2;  // generic-family local dimension
    std::size_t k = 1;  // generic-family challenge count
};

namespace detail {

/// Frozen per-hypothesis sampling tables for a circuit attack.
struct SampleTables {
    std::vector<double> hyp_cum;
    std::vector<int> labels;
    std::vector<std::vector<double>> joint_cum;  // flattened (oa * nb + ob) cumulative
    std::size_t na = 0, nb = 0;
    std::size_t randomness = 1;
    std::vector<std::vector<int>> ans_a;  // [oa][r]
    std::vector<std::vector<int>> ans_b;  // [ob][r]
};

inline SampleTables build_tables(const ProtocolSpec &spec, const CircuitAttack &ca) {
    SampleTables t;
    t.randomness = ca.randomness;
    t.na = ca.final_a.size();
    t.nb = ca.final_b.size();
    double acc = 0.0;
    for (std::size_t h = 0; h < spec.hypotheses.size(); ++h) {
        acc += spec.hypotheses[h].prior;
        t.hyp_cum.push_back(acc);
        t.labels.push_back(spec.hypotheses[h].label);
        const auto p = joint_outcome_distribution(spec, ca, h);
        std::vector<double> cum;
        cum.reserve(t.na * t.nb);
        double c = 0.0;
        for (std::size_t oa = 0; oa < t.na; ++oa) {
            for (std::size_t ob = 0; ob < t.nb; ++ob) {
                c += p[oa][ob];
                cum.push_back(c);
            }
        }
        t.joint_cum.push_back(std::move(cum));
    }
    t.ans_a.resize(t.na, std::vector<int>(t.randomness));
    t.ans_b.resize(t.nb, std::vector<int>(t.randomness));
    for (std::size_t o = 0; o < t.na; ++o) {
        for (std::size_t r = 0; r < t.randomness; ++r) {
            t.ans_a[o][r] = ca.answer_a(o, r);
        }
    }
    for (std::size_t o = 0; o < t.nb; ++o) {
        for (std::size_t r = 0; r < t.randomness; ++r) {
            t.ans_b[o][r] = ca.answer_b(o, r);
        }
    }
    return t;
}

inline std::size_t sample_cum(const std::vector<double> &cum, double u) {
    const auto it = std::upper_bound(cum.begin(), cum.end(), u * cum.back());
    return std::min<std::size_t>(std::distance(cum.begin(), it), cum.size() - 1);
}

struct Tally {
    std::uint64_t conclusive = 0;
    std::uint64_t successes = 0;
};

inline Tally run_circuit_chunk(const SampleTables &t, std::uint64_t rounds, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Tally tally;
    for (std::uint64_t i = 0; i < rounds; ++i) {
        const std::size_t h = sample_cum(t.hyp_cum, rng.next_double());
        const std::size_t flat = sample_cum(t.joint_cum[h], rng.next_double());
        const std::size_t r = t.randomness > 1 ? rng.next_below(t.randomness) : 0;
        const int ans_a = t.ans_a[flat / t.nb][r];
        const int ans_b = t.ans_b[flat % t.nb][r];
        if (ans_a == kNoAnswer || ans_b == kNoAnswer) {
            continue;
        }
        ++tally.conclusive;
        if (ans_a == ans_b && ans_a == t.labels[h]) {
            ++tally.successes;
        }
    }
    return tally;
}

inline Tally run_teleport_chunk(const TeleportGuess &tg, std::uint64_t rounds, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Tally tally;
    const std::uint64_t d2 = static_cast<std::uint64_t>(tg.d) * tg.d;
    for (std::uint64_t i = 0; i < rounds; ++i) {
        const std::uint64_t f = rng.next_below(tg.k);        // challenge label
        const std::uint64_t corr = rng.next_below(d2);       // teleportation correction index
        const std::uint64_t guess = rng.next_below(tg.k);    // B's guess of the challenge
        if (corr == 0 && guess == f) {
            // Perfect round: both attackers reproduce the honest operation.
            ++tally.conclusive;
            ++tally.successes;
        }
    }
    return tally;
}

}  // namespace detail

/**
 * Simulate `rounds` protocol rounds. Work is split into `chunks` blocks;
 * chunk c gets the stream seeded with child_seed(seed, c), so the result is
 * a function of (spec, strategy, rounds, seed, chunks) only.
 */
inline TrialStats simulate(const ProtocolSpec &spec, const AttackStrategy &strategy,
                           std::uint64_t rounds, std::uint64_t seed, std::uint32_t chunks = 1,
                           bool parallel = true) {
    if (rounds < 1 || chunks < 1) {
        throw std::invalid_argument("simulate: rounds and chunks must be >= 1");
    }
    validate_strategy(strategy, spec.num_labels());

    std::vector<std::uint64_t> chunk_rounds(chunks, rounds / chunks);
    for (std::uint64_t c = 0; c < rounds % chunks; ++c) {
        ++chunk_rounds[c];
    }

    std::vector<detail::Tally> tallies(chunks);
    const auto run_chunk = [&](std::uint32_t c, auto &&worker) {
        tallies[c] = worker(chunk_rounds[c], child_seed(seed, c));
    };

    const auto dispatch = [&](auto &&worker) {
        if (parallel && chunks > 1) {
            std::vector<std::thread> threads;
            threads.reserve(chunks);
            for (std::uint32_t c = 0; c < chunks; ++c) {
                threads.emplace_back([&, c] { run_chunk(c, worker); });
            }
            for (std::thread &th : threads) {
                th.join();
            }
        } else {
            for (std::uint32_t c = 0; c < chunks; ++c) {
                run_chunk(c, worker);
            }
        }
    };

    if (strategy.is_circuit()) {
        const detail::SampleTables tables = detail::build_tables(spec, strategy.circuit());
        dispatch([&](std::uint64_t n, std::uint64_t s) {
            return detail::run_circuit_chunk(tables, n, s);
        });
    } else {
        const TeleportGuess &tg = strategy.teleport();
        if (!spec.abstract || spec.k != tg.k || spec.max_input_dim() != tg.d) {
            throw std::invalid_argument("simulate: teleport-guess parameters do not match");
        }
        dispatch([&](std::uint64_t n, std::uint64_t s) {
            return detail::run_teleport_chunk(tg, n, s);
        });
    }

    TrialStats stats;
    stats.total = rounds;
    for (const detail::Tally &t : tallies) {  // reduce in chunk order
        stats.conclusive += t.conclusive;
        stats.successes += t.successes;
    }
    stats.finalize();
    return stats;
}

struct CrossCheckReport {
    TrialStats stats;
    ExactRates exact;
    WilsonInterval wilson999_success;
    WilsonInterval wilson999_conclusive;
    bool success_flag = false;     // exact success rate outside the 99.9% interval
    bool conclusive_flag = false;  // exact conclusive rate outside the 99.9% interval

    bool flagged() const { return success_flag || conclusive_flag; }
};

/// Compare simulated rates against externally supplied exact values.
inline CrossCheckReport cross_check_against(const TrialStats &stats, const ExactRates &exact) {
    CrossCheckReport r;
    r.stats = stats;
    r.exact = exact;
    r.wilson999_success = wilson_interval(stats.successes, stats.total, kZ999);
    r.wilson999_conclusive = wilson_interval(stats.conclusive, stats.total, kZ999);
    r.success_flag =
        exact.success < r.wilson999_success.lo || exact.success > r.wilson999_success.hi;
    r.conclusive_flag =
        exact.conclusive < r.wilson999_conclusive.lo || exact.conclusive > r.wilson999_conclusive.hi;
    return r;
}

/// Run the simulation and flag it against the exact propagation oracle.
inline CrossCheckReport cross_check(const ProtocolSpec &spec, const AttackStrategy &strategy,
                                    std::uint64_t rounds, std::uint64_t seed,
                                    std::uint32_t chunks = 1) {
    const TrialStats stats = simulate(spec, strategy, rounds, seed, chunks);
    return cross_check_against(stats, evaluate_strategy_exact(spec, strategy));
}

}  // namespace qpv
