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
 * Name-based registries. These are the single source of valid protocol and
 * strategy names for the CLI and the simulation harness.
 */

#pragma once

#include "qpv/strategies.hpp"

namespace qpv {

inline std::vector<std::string> protocol_names() {
    return {"bell", "sym-antisym", "sym-antisym-2", "qpv-generic"};
}

inline std::vector<std::string> strategy_names() {
    return {"locc-xor", "locc-xor-2", "locc-bell-guess", "loqc-exchange", "teleport-guess"};
}

/// Resolve a protocol by name; d and k apply to the generic family only.
inline ProtocolSpec make_protocol(const std::string &name, std::size_t d = 2, std::size_t k = 1) {
    if (name == "bell") {
        return bell_protocol();
    }
    if (name == "sym-antisym") {
        return sym_antisym_protocol();
    }
    if (name == "sym-antisym-2") {
        return sym_antisym_two_round();
    }
    if (name == "qpv-generic") {
        return generic_qpv(d, d, k);
    }
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

/// Resolve a strategy by name; d and k apply to teleport-guess only.
inline AttackStrategy make_strategy(const std::string &name, std::size_t d = 2,
                                    std::size_t k = 1) {
    if (name == "locc-xor") {
        return locc_xor();
    }
    if (name == "locc-xor-2") {
        return locc_xor_two_round();
    }
    if (name == "locc-bell-guess") {
        return locc_bell_computational_guess();
    }
    if (name == "loqc-exchange") {
        return loqc_exchange();
    }
    if (name == "teleport-guess") {
        return teleport_guess_attack(d, k);
    }
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

struct ShippedPair {
    std::string protocol;
    std::string strategy;
    std::size_t d = 2;
    std::size_t k = 1;
};

/// Every (protocol, strategy) pair the cross-check battery runs.
inline std::vector<ShippedPair> shipped_pairs() {
    return {
        {"sym-antisym", "locc-xor"},
        {"sym-antisym-2", "locc-xor-2"},
        {"bell", "locc-bell-guess"},
        {"sym-antisym-2", "loqc-exchange"},
        {"qpv-generic", "teleport-guess", 2, 2},
    };
}

}  // namespace qpv
