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

#include <array>
#include <cstdio>
#include <filesystem>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

CliResult run_cli(const std::string &args) {
    const std::string cmd = std::string(QPV_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CliResult r;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string tmp_out_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "qpv_cli_test_out";
    std::filesystem::remove_all(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("cli help and version") {
    REQUIRE(run_cli("--help").exit_code == 0);
    const CliResult v = run_cli("--version");
    REQUIRE(v.exit_code == 0);
    REQUIRE(v.output.find("qpv-lab") != std::string::npos);
}

TEST_CASE("cli bounds defaults and flags") {
    const CliResult r = run_cli("bounds --d 2 --k 2 --json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    bool clone = false, threshold = false, cap = false;
    for (const auto &item : j["results"]) {
        if (item["name"] == "cloning_bound") {
            clone = item["value"] == 0.75;
        }
        if (item["name"] == "loss_attack_threshold") {
            threshold = item["value"] == 0.125;
        }
        if (item["name"] == "qc_success_upper") {
            cap = item["value"].get<double>() <= 0.926;
        }
    }
    REQUIRE(clone);
    REQUIRE(threshold);
    REQUIRE(cap);

    // Defaults: d = 2, k = 1.
    const CliResult d = run_cli("bounds --json");
    const auto jd = nlohmann::json::parse(d.output);
    REQUIRE(jd["config"]["d"] == 2);
    REQUIRE(jd["config"]["k"] == 1);

    REQUIRE(run_cli("bounds --d 0").exit_code != 0);
}

TEST_CASE("cli sdp solve and verify-cert") {
    const CliResult solve = run_cli("sdp solve --protocol sym-antisym --json");
    REQUIRE(solve.exit_code == 0);
    const auto js = nlohmann::json::parse(solve.output);
    REQUIRE(std::abs(js["results"][0]["value"].get<double>() - 5.0 / 6.0) < 1e-5);

    const CliResult cert = run_cli("sdp verify-cert --protocol sym-antisym-2 --json");
    REQUIRE(cert.exit_code == 0);
    const auto jc = nlohmann::json::parse(cert.output);
    REQUIRE(jc["results"][0]["valid"] == true);
    REQUIRE(jc["results"][0]["bound_exact"] == "17/18");

    REQUIRE(run_cli("sdp verify-cert --protocol bell").exit_code != 0);
    REQUIRE(run_cli("sdp solve --protocol no-such-protocol").exit_code != 0);
}

TEST_CASE("cli loss sweep is flat for the bell protocol") {
    const CliResult r = run_cli("sdp loss-sweep --protocol bell --eta 0.25,0.5,0.75,1.0 --json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    REQUIRE(j["results"].size() == 4);
    for (const auto &item : j["results"]) {
        REQUIRE(std::abs(item["conditional"].get<double>() - 0.5) < 1e-3);
    }
}

TEST_CASE("cli simulate is deterministic and logs csv") {
    const std::string out = tmp_out_dir();
    const std::string args = "simulate --protocol sym-antisym-2 --strategy loqc-exchange "
                             "--rounds 20000 --seed 7 --json --out " + out;
    const CliResult a = run_cli(args);
    REQUIRE(a.exit_code == 0);
    const auto j = nlohmann::json::parse(a.output);
    REQUIRE(j["results"][0]["stats"]["success_rate"] == 1.0);

    const CliResult b = run_cli(args);
    REQUIRE(b.output == a.output);  // byte-identical rerun

    REQUIRE(std::filesystem::exists(std::filesystem::path(out) / "results.csv"));
    std::filesystem::remove_all(out);

    REQUIRE(run_cli("simulate --protocol bell --strategy no-such --rounds 10").exit_code != 0);
}

TEST_CASE("cli simulate teleport attack with cross-check") {
    const std::string out = tmp_out_dir();
    const CliResult r = run_cli(
        "simulate --protocol qpv-generic --d 2 --k 2 --strategy teleport-guess "
        "--rounds 200000 --seed 7 --cross-check --json --out " + out);
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    const double concl = j["results"][0]["stats"]["conclusive_rate"].get<double>();
    REQUIRE(std::abs(concl - 0.125) < 0.01);
    REQUIRE(j["results"][1]["cross_check"]["success_flag"] == false);
    std::filesystem::remove_all(out);
}
