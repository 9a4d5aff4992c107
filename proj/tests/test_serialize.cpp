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

#include "qpv/serialize.hpp"

using namespace qpv;

TEST_CASE("matrix json round trip") {
    SplitMix64 rng(51);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = random_density_matrix({2, 3}, rng);
        const json j = matrix_to_json(rho.op());
        REQUIRE(j.contains("dims"));
        REQUIRE(j.contains("re"));
        REQUIRE(j.contains("im"));
        const Operator back = matrix_from_json(j);
        REQUIRE(back.dims() == rho.dims());
        REQUIRE(max_abs_diff(back.mat(), rho.mat()) == 0.0);
    }
}

TEST_CASE("round_sig pins reports to 12 significant digits") {
    REQUIRE(round_sig(5.0 / 6.0) == 0.833333333333);
    REQUIRE(round_sig(0.75) == 0.75);
    REQUIRE(round_sig(1.0) == 1.0);
    REQUIRE(round_sig(1.23456789012345e-7) == 1.23456789012e-7);
}

TEST_CASE("canonical dumps are sorted and reproducible") {
    ReportBundle b;
    b.command = "bounds";
    b.config = {{"k", 1}, {"d", 2}};
    b.results.push_back(json{{"zeta", 1.0}, {"alpha", 2.0}});
    const std::string once = b.dump();
    const std::string twice = b.dump();
    REQUIRE(once == twice);
    // Keys serialize in sorted order.
    REQUIRE(once.find("\"alpha\"") < once.find("\"zeta\""));
    REQUIRE(once.find("\"command\"") < once.find("\"config\""));
    // No timestamp unless stamped.
    REQUIRE(once.find("timestamp") == std::string::npos);
    b.timestamp = "2026-01-01T00:00:00Z";
    REQUIRE(b.dump().find("timestamp") != std::string::npos);
}

TEST_CASE("protocol and strategy descriptions") {
    const json p = protocol_to_json(sym_antisym_protocol());
    REQUIRE(p["name"] == "sym-antisym");
    REQUIRE(p["hypotheses"].size() == 2);
    REQUIRE(p["hypotheses"][0]["prior"] == 0.5);

    const json g = protocol_to_json(generic_qpv(3, 2, 4));
    REQUIRE(g["k"] == 4);

    const json s = strategy_to_json(teleport_guess_attack(2, 2));
    REQUIRE(s["name"] == "teleport-guess");
    REQUIRE(s["classical_only"] == false);
    REQUIRE(s["params"]["d"] == 2.0);
}

TEST_CASE("trial stats serialization") {
    TrialStats stats;
    stats.total = 1000;
    stats.conclusive = 250;
    stats.successes = 250;
    stats.finalize();
    const json j = stats_to_json(stats);
    REQUIRE(j["total"] == 1000);
    REQUIRE(j["conclusive_rate"] == 0.25);
    REQUIRE(j["conditional_rate"] == 1.0);
    REQUIRE(j["wilson99_success"]["lo"].get<double>() < 0.25);
}

TEST_CASE("csv rows") {
    RunConfig cfg;
    cfg.protocol = "bell";
    cfg.strategy = "locc-bell-guess";
    cfg.rounds = 1000;
    cfg.seed = 7;
    TrialStats stats;
    stats.total = 1000;
    stats.conclusive = 1000;
    stats.successes = 500;
    stats.finalize();
    const std::string row = csv_row(cfg, stats);
    REQUIRE(row.find("bell,locc-bell-guess,1000,7,0.5,1,") != std::string::npos);
    REQUIRE(csv_row(cfg, stats) == row);  // deterministic, hash included
    REQUIRE(std::string(kCsvHeader).find("config_hash") == 0);
}
