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

// Acceptance gate: runs every criterion of the verification battery at its
// pinned tolerance and prints one PASS/FAIL line per criterion. Exits with
// the number of failed criteria.

#include <cstdio>

#include "qpv/suite.hpp"

int main() {
    qpv::SuiteOptions opts;
    opts.seed = 7;
    const qpv::SuiteReport report = qpv::run_suite(opts);

    int failures = 0;
    for (const qpv::CriterionResult &c : report.criteria) {
        std::printf("[%s] %2d. %-62s (%.2fs) %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), c.seconds, c.detail.c_str());
        failures += c.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(report.criteria.size()) - failures,
                report.criteria.size());
    return failures;
}
