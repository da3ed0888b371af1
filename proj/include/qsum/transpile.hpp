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

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsum/circuit.hpp"

namespace qsum {

/// Directed CNOT adjacency of a device: an edge (c, t) means CNOT with
/// control c and target t is executable.
class CouplingMap {
   public:
    CouplingMap(int qubit_count, std::set<std::pair<int, int>> edges);

    /// The five-qubit ibmqx2 map {0: [1, 2], 1: [2], 3: [2, 4], 4: [2]}.
    static CouplingMap ibmqx2();

    int qubit_count() const { return qubit_count_; }
    const std::set<std::pair<int, int>> &edges() const { return edges_; }

    bool allows(int control, int target) const { return edges_.count({control, target}) != 0; }
    bool adjacent(int a, int b) const { return allows(a, b) || allows(b, a); }

    /// Number of edges incident to `qubit`, counting both directions.
    int degree(int qubit) const;

    /// Undirected neighbours ordered by descending degree, then ascending index.
    std::vector<int> neighbours(int qubit) const;

   private:
    int qubit_count_;
    std::set<std::pair<int, int>> edges_;
};

/// Parses `{"qubits": 5, "edges": [[0,1], [0,2], ...]}`.
CouplingMap parse_coupling_map(const std::string &json_text);
CouplingMap load_coupling_map(const std::string &path);
std::string to_json(const CouplingMap &map);

struct Violation {
    std::size_t op_index;
    std::string reason;

    bool operator==(const Violation &) const = default;
};

/// Gates outside {H, X, CNOT, PHASE} and CNOTs without a matching edge.
/// Throws std::invalid_argument if the circuit is wider than the map.
std::vector<Violation> validate(const Circuit &circuit, const CouplingMap &map);

/// Replaces each CZ(c, t) with H(t), CNOT(c -> t), H(t).
Circuit decompose_cz(const Circuit &circuit);

/// H(a) H(b) CNOT(b -> a) H(a) H(b), which equals CNOT(a -> b).
std::vector<GateOp> reverse_cnot(const GateOp &cnot);

struct Rewrite {
    std::string rule;
    std::size_t op_index;  // index in the input circuit
    std::vector<int> qubits;

    bool operator==(const Rewrite &) const = default;
};

struct TranspileReport {
    std::size_t original_gate_count = 0;
    std::size_t rewritten_gate_count = 0;
    std::vector<Rewrite> rewrites;
    /// layout[logical] = physical; empty when qubits keep their labels.
    std::vector<int> layout;
};

struct TranspileOptions {
    /// Optional initial placement, layout[logical] = physical.
    std::vector<int> layout;
};

struct TranspileResult {
    Circuit circuit;
    TranspileReport report;
};

class RoutingError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/**
 * Rewrites `circuit` so that it passes validate() under `map`.
 *
 * In order: CZ, CPHASE and SWAP are lowered to H/CNOT/PHASE; CNOTs whose
 * only edge runs the other way are reversed by Hadamard conjugation; CNOTs
 * with no edge either way are routed by swapping the control along a
 * shortest path (preferring high-degree intermediate qubits) and back.
 * Finally, adjacent H pairs introduced by the rewriting are cancelled.
 *
 * A circuit that already passes validate() comes back unchanged. Throws
 * RoutingError naming the pair when the map has no path between them.
 */
TranspileResult transpile(const Circuit &circuit, const CouplingMap &map, const TranspileOptions &options = {});

/// Moves every op from qubit q to mapping[q] on a `qubit_count`-qubit circuit.
Circuit relabel(const Circuit &circuit, std::span<const int> mapping, int qubit_count);

}  // namespace qsum
