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
 * JSON/CSV serialization. Matrices travel as {dims, re, im}; report values
 * are rounded to 12 significant digits before storage so dumps are canonical
 * (nlohmann objects already iterate in sorted key order). Bundles carry no
 * wall-clock data unless explicitly stamped: byte-identical reruns are part
 * of the contract.
 */

#pragma once

#include <cstdio>
#include <cstring>
#include <string>

#include <json.hpp>

#include "qpv/bounds.hpp"
#include "qpv/montecarlo.hpp"
#include "qpv/protocols.hpp"
#include "qpv/sdp.hpp"
#include "qpv/strategies.hpp"
#include "qpv/version.hpp"

namespace qpv {

using json = nlohmann::json;

/// Round to `digits` significant decimal digits (default matches the report format).
inline double round_sig(double x, int digits = 12) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

/// 64-bit FNV-1a, used for the config_hash CSV column.
inline std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline json matrix_to_json(const Operator &op) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < op.dim(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (std::size_t j = 0; j < op.dim(); ++j) {
            rrow.push_back(op(i, j).real());
            irow.push_back(op(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"dims", op.dims()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Operator matrix_from_json(const json &j) {
    const std::vector<std::size_t> dims = j.at("dims").get<std::vector<std::size_t>>();
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    const std::size_t n = re.size();
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t jj = 0; jj < n; ++jj) {
            m(i, jj) = cplx(re[i][jj].get<double>(), im[i][jj].get<double>());
        }
    }
    return Operator(std::move(m), dims);
}

inline json interval_to_json(const WilsonInterval &w) {
    return json{{"lo", round_sig(w.lo)}, {"hi", round_sig(w.hi)}};
}

inline json stats_to_json(const TrialStats &s) {
    return json{{"total", s.total},
                {"conclusive", s.conclusive},
                {"successes", s.successes},
                {"success_rate", round_sig(s.success_rate)},
                {"conclusive_rate", round_sig(s.conclusive_rate)},
                {"conditional_rate", round_sig(s.conditional_rate)},
                {"wilson99_success", interval_to_json(s.wilson99_success)},
                {"wilson99_conclusive", interval_to_json(s.wilson99_conclusive)},
                {"wilson99_conditional", interval_to_json(s.wilson99_conditional)}};
}

inline json rates_to_json(const ExactRates &r) {
    return json{{"success", round_sig(r.success)},
                {"conclusive", round_sig(r.conclusive)},
                {"agree", round_sig(r.agree)},
                {"conditional", round_sig(r.conditional)}};
}

inline json protocol_to_json(const ProtocolSpec &spec) {
    json hyps = json::array();
    for (const Hypothesis &h : spec.hypotheses) {
        hyps.push_back(json{{"label", h.label},
                            {"prior", round_sig(h.prior)},
                            {"state", matrix_to_json(h.state.op())}});
    }
    json j{{"name", spec.name},
           {"dims", spec.dims},
           {"a_factors", spec.a_factors},
           {"hypotheses", std::move(hyps)}};
    if (spec.abstract) {
        j["d_a"] = spec.d_a;
        j["d_b"] = spec.d_b;
        j["k"] = spec.k;
    }
    return j;
}

inline json strategy_to_json(const AttackStrategy &s) {
    return json{{"name", s.name}, {"classical_only", s.classical_only}, {"params", s.params}};
}

inline json bound_to_json(const BoundReport &b) {
    return json{{"name", b.name},
                {"parameters", b.parameters},
                {"value", round_sig(b.value)},
                {"kind", b.kind},
                {"provenance", b.provenance}};
}

inline json certificate_to_json(const DualCertificate &c) {
    json q = json::array();
    for (const Operator &qi : c.q) {
        q.push_back(matrix_to_json(qi));
    }
    return json{{"y", matrix_to_json(c.y)}, {"q", std::move(q)}};
}

/**
 * A reproducible result bundle: version, the echoed configuration, the seed,
 * and named results. `timestamp` stays empty (and absent from the JSON)
 * unless the caller stamps it, so identical configs dump identical bytes.
 */
struct ReportBundle {
    std::string command;
    json config = json::object();
    std::uint64_t seed = 0;
    json results = json::array();
    std::string timestamp;

    json to_json() const {
        json j{{"version", std::string(kToolName) + " " + kVersion},
               {"command", command},
               {"config", config},
               {"seed", seed},
               {"results", results}};
        if (!timestamp.empty()) {
            j["timestamp"] = timestamp;
        }
        return j;
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }
};

// ---------------------------------------------------------------------------
// CSV output for longitudinal simulation runs.

inline constexpr const char *kCsvHeader =
    "config_hash,protocol,strategy,rounds,seed,success_rate,conclusive_rate,"
    "conditional_rate,wilson_lo,wilson_hi";

inline std::string csv_row(const RunConfig &cfg, const TrialStats &s) {
    const json echo{{"protocol", cfg.protocol}, {"strategy", cfg.strategy},
                    {"rounds", cfg.rounds},    {"seed", cfg.seed},
                    {"chunks", cfg.thread_chunks}, {"d", cfg.d}, {"k", cfg.k}};
    char buf[512];
    std::snprintf(buf, sizeof buf, "%016llx,%s,%s,%llu,%llu,%.12g,%.12g,%.12g,%.12g,%.12g",
                  static_cast<unsigned long long>(fnv1a(echo.dump())), cfg.protocol.c_str(),
                  cfg.strategy.c_str(), static_cast<unsigned long long>(cfg.rounds),
                  static_cast<unsigned long long>(cfg.seed), s.success_rate, s.conclusive_rate,
                  s.conditional_rate, s.wilson99_success.lo, s.wilson99_success.hi);
    return buf;
}

}  // namespace qpv
