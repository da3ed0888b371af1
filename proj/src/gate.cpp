// Copyright 2026 The qsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsum/gate.hpp"

#include <cstdio>
#include <stdexcept>

namespace qsum {

std::vector<int> GateOp::qubits() const {
    std::vector<int> all = controls;
    all.insert(all.end(), targets.begin(), targets.end());
    return all;
}

GateOp GateOp::inverse() const {
    GateOp inv = *this;
    if (kind == GateKind::PHASE || kind == GateKind::CPHASE) {
        inv.angle = -angle;
    }
    return inv;
}

void validate_gate(const GateOp &gate, int qubit_count) {
    std::size_t want_controls = 0;
    std::size_t want_targets = 1;
    switch (gate.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::PHASE:
            break;
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CPHASE:
            want_controls = 1;
            break;
        case GateKind::SWAP:
            want_targets = 2;
            break;
    }
    if (gate.controls.size() != want_controls || gate.targets.size() != want_targets) {
        throw std::invalid_argument(std::string("wrong arity for gate ") + gate_name(gate.kind));
    }
    auto qubits = gate.qubits();
    for (std::size_t i = 0; i < qubits.size(); i++) {
        if (qubits[i] < 0 || qubits[i] >= qubit_count) {
            throw std::out_of_range("qubit index " + std::to_string(qubits[i]) + " out of range for " +
                                    std::to_string(qubit_count) + " qubits");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument(std::string("gate ") + gate_name(gate.kind) +
                                            " uses qubit " + std::to_string(qubits[i]) + " twice");
            }
        }
    }
}

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "h";
        case GateKind::X:
            return "x";
        case GateKind::CNOT:
            return "cx";
        case GateKind::CZ:
            return "cz";
        case GateKind::PHASE:
            return "p";
        case GateKind::CPHASE:
            return "cp";
        case GateKind::SWAP:
            return "swap";
    }
    return "?";
}

std::string to_string(const GateOp &gate) {
    std::string out = gate_name(gate.kind);
    if (gate.kind == GateKind::PHASE || gate.kind == GateKind::CPHASE) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "(%.17g)", gate.angle);
        out += buf;
    }
    for (int q : gate.qubits()) {
        out += " q[" + std::to_string(q) + "]";
    }
    return out;
}

}  // namespace qsum
