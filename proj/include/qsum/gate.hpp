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

#pragma once

#include <string>
#include <vector>

namespace qsum {

enum class GateKind { H, X, CNOT, CZ, PHASE, CPHASE, SWAP };

/// One gate application. `angle` is only meaningful for PHASE and CPHASE.
///
/// Arity: H/X/PHASE take one target and no controls, CNOT/CZ/CPHASE take
/// one control and one target, SWAP takes two targets.
struct GateOp {
    GateKind kind = GateKind::H;
    std::vector<int> controls;
    std::vector<int> targets;
    double angle = 0.0;

    static GateOp h(int q) { return {GateKind::H, {}, {q}, 0.0}; }
    static GateOp x(int q) { return {GateKind::X, {}, {q}, 0.0}; }
    static GateOp phase(int q, double theta) { return {GateKind::PHASE, {}, {q}, theta}; }
    static GateOp cnot(int control, int target) { return {GateKind::CNOT, {control}, {target}, 0.0}; }
    static GateOp cz(int control, int target) { return {GateKind::CZ, {control}, {target}, 0.0}; }
    static GateOp cphase(int control, int target, double theta) {
        return {GateKind::CPHASE, {control}, {target}, theta};
    }
    static GateOp swap(int a, int b) { return {GateKind::SWAP, {}, {a, b}, 0.0}; }

    /// Controls followed by targets.
    std::vector<int> qubits() const;

    /// The inverse gate. Only PHASE and CPHASE change (angle negated).
    GateOp inverse() const;

    bool operator==(const GateOp &other) const = default;
};

/// Throws std::invalid_argument on wrong arity or overlapping indices and
/// std::out_of_range when an index is negative or >= qubit_count.
void validate_gate(const GateOp &gate, int qubit_count);

const char *gate_name(GateKind kind);

std::string to_string(const GateOp &gate);

}  // namespace qsum
