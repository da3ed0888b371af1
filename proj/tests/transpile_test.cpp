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

#include "qsum/transpile.hpp"

#include <algorithm>
#include <numbers>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace qsum;

namespace {

Eigen::MatrixXcd matrix_at(const Circuit &c, int width) { return circuit_to_matrix(c.widened(width)); }

bool same_unitary(const Circuit &a, const Circuit &b) {
    int width = std::max(a.qubit_count(), b.qubit_count());
    auto ua = matrix_at(a, width), ub = matrix_at(b, width);
    return (ua - ub).cwiseAbs().maxCoeff() <= 1e-9;
}

std::vector<std::string> rules(const TranspileReport &report) {
    std::vector<std::string> out;
    for (const auto &r : report.rewrites) {
        out.push_back(r.rule);
    }
    return out;
}

CouplingMap line_map(int n) {
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; i++) {
        edges.insert({i, i + 1});
    }
    return CouplingMap(n, edges);
}

}  // namespace

TEST(CouplingMap, ibmqx2_edges) {
    auto map = CouplingMap::ibmqx2();
    EXPECT_EQ(map.qubit_count(), 5);
    EXPECT_EQ(map.edges(), (std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}, {3, 2}, {3, 4}, {4, 2}}));
    EXPECT_TRUE(map.allows(0, 1));
    EXPECT_FALSE(map.allows(1, 0));
    EXPECT_TRUE(map.adjacent(1, 0));
    EXPECT_FALSE(map.adjacent(0, 3));
    EXPECT_EQ(map.degree(2), 4);
    EXPECT_EQ(map.neighbours(0), (std::vector<int>{2, 1}));
}

TEST(CouplingMap, rejects_bad_edges) {
    EXPECT_THROW(CouplingMap(2, {{0, 2}}), std::out_of_range);
    EXPECT_THROW(CouplingMap(2, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(CouplingMap(0, {}), std::invalid_argument);
}

TEST(CouplingMap, json_round_trip_and_file) {
    auto map = CouplingMap::ibmqx2();
    EXPECT_EQ(parse_coupling_map(to_json(map)).edges(), map.edges());
    auto loaded = load_coupling_map(std::string(QSUM_SOURCE_DIR) + "/maps/ibmqx2.json");
    EXPECT_EQ(loaded.qubit_count(), 5);
    EXPECT_EQ(loaded.edges(), map.edges());
    EXPECT_THROW(parse_coupling_map("{"), std::invalid_argument);
    EXPECT_THROW(parse_coupling_map(R"({"edges": []})"), std::invalid_argument);
    EXPECT_THROW(parse_coupling_map(R"({"qubits": 2, "edges": [[0]]})"), std::invalid_argument);
    EXPECT_THROW(parse_coupling_map(R"({"qubits": 2, "edges": [[0, 5]]})"), std::out_of_range);
    EXPECT_THROW(load_coupling_map("/nonexistent/map.json"), std::invalid_argument);
}

TEST(Validate, examples) {
    auto map = CouplingMap::ibmqx2();
    Circuit ok(5);
    ok.append(GateOp::h(0)).append(GateOp::cnot(0, 1)).append(GateOp::x(4)).append(GateOp::phase(3, 0.2));
    EXPECT_TRUE(validate(ok, map).empty());

    Circuit bad(5);
    bad.append(GateOp::cnot(1, 4)).append(GateOp::cz(0, 1)).append(GateOp::cnot(1, 0));
    auto v = validate(bad, map);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0].op_index, 0u);
    EXPECT_NE(v[0].reason.find("q[1] -> q[4]"), std::string::npos);
    EXPECT_EQ(v[1].op_index, 1u);
    EXPECT_NE(v[1].reason.find("cz"), std::string::npos);
    EXPECT_EQ(v[2].op_index, 2u);

    EXPECT_THROW(validate(Circuit(6), map), std::invalid_argument);
}

TEST(DecomposeCz, examples) {
    Circuit c(2);
    c.append(GateOp::cz(0, 1));
    auto d = decompose_cz(c);
    EXPECT_EQ(d.ops(), (std::vector<GateOp>{GateOp::h(1), GateOp::cnot(0, 1), GateOp::h(1)}));
    EXPECT_TRUE(same_unitary(c, d));

    Circuit twice(2);
    twice.append(GateOp::cz(0, 1)).append(GateOp::cz(0, 1));
    EXPECT_LE((circuit_to_matrix(decompose_cz(twice)) - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);

    Circuit other(3);
    other.append(GateOp::h(2)).append(GateOp::cnot(2, 0));
    EXPECT_EQ(decompose_cz(other).ops(), other.ops());
}

TEST(ReverseCnot, matches_cnot) {
    Circuit cx(2);
    cx.append(GateOp::cnot(0, 1));
    Circuit rev(2);
    for (const auto &g : reverse_cnot(GateOp::cnot(0, 1))) {
        rev.append(g);
    }
    EXPECT_EQ(rev.size(), 5u);
    EXPECT_EQ(rev.ops()[2], GateOp::cnot(1, 0));
    EXPECT_TRUE(same_unitary(cx, rev));

    // Reversing the inner CNOT again: 4 outer H plus a 5-gate block.
    Circuit again(2);
    for (const auto &g : rev.ops()) {
        if (g.kind == GateKind::CNOT) {
            for (const auto &r : reverse_cnot(g)) {
                again.append(r);
            }
        } else {
            again.append(g);
        }
    }
    EXPECT_EQ(again.size(), 9u);
    EXPECT_TRUE(same_unitary(cx, again));
    EXPECT_THROW(reverse_cnot(GateOp::h(0)), std::invalid_argument);
}

TEST(Transpile, valid_circuit_is_unchanged) {
    Circuit c(5);
    c.append(GateOp::h(0)).append(GateOp::cnot(0, 1)).append(GateOp::cnot(3, 4)).append(GateOp::phase(2, 1.0));
    auto r = transpile(c, CouplingMap::ibmqx2());
    EXPECT_EQ(r.circuit.ops(), c.ops());
    EXPECT_TRUE(r.report.rewrites.empty());
    EXPECT_EQ(r.report.original_gate_count, 4u);
    EXPECT_EQ(r.report.rewritten_gate_count, 4u);
}

TEST(Transpile, reversed_cz_collapses_to_three_gates) {
    Circuit c(2);
    c.append(GateOp::cz(1, 0));
    auto r = transpile(c, CouplingMap::ibmqx2());
    EXPECT_EQ(r.circuit.ops(), (std::vector<GateOp>{GateOp::h(1), GateOp::cnot(0, 1), GateOp::h(1)}));
    EXPECT_EQ(rules(r.report),
              (std::vector<std::string>{"decompose-cz", "reverse-cnot", "cancel-h-pair", "cancel-h-pair"}));
    EXPECT_TRUE(same_unitary(c, r.circuit));
}

TEST(Transpile, every_directed_pair_on_ibmqx2) {
    auto map = CouplingMap::ibmqx2();
    for (int a = 0; a < 5; a++) {
        for (int b = 0; b < 5; b++) {
            if (a == b) {
                continue;
            }
            for (auto gate : {GateOp::cnot(a, b), GateOp::cz(a, b), GateOp::cphase(a, b, 0.3), GateOp::swap(a, b)}) {
                Circuit c(5);
                c.append(gate);
                auto r = transpile(c, map);
                EXPECT_TRUE(validate(r.circuit, map).empty()) << to_string(gate);
                EXPECT_TRUE(same_unitary(c, r.circuit)) << to_string(gate);
            }
        }
    }
}

TEST(Transpile, routes_through_hub) {
    Circuit c(5);
    c.append(GateOp::cnot(0, 3));
    auto r = transpile(c, CouplingMap::ibmqx2());
    ASSERT_FALSE(r.report.rewrites.empty());
    EXPECT_EQ(r.report.rewrites[0].rule, "route-swap");
    EXPECT_EQ(r.report.rewrites[0].qubits, (std::vector<int>{0, 2, 3}));
    EXPECT_EQ(r.report.rewritten_gate_count, r.circuit.size());
}

TEST(Transpile, preserves_random_circuits) {
    std::mt19937_64 rng(77);
    auto ibm = CouplingMap::ibmqx2();
    auto line = line_map(4);
    for (int trial = 0; trial < 60; trial++) {
        const auto &map = trial % 2 == 0 ? ibm : line;
        int q = trial % 2 == 0 ? 5 : 4;
        auto c = qsum::testing::random_circuit(q, 14, rng);
        auto r = transpile(c, map);
        EXPECT_TRUE(validate(r.circuit, map).empty());
        EXPECT_TRUE(same_unitary(c, r.circuit)) << to_text(c);
    }
}

TEST(Transpile, idempotent) {
    std::mt19937_64 rng(8);
    auto map = CouplingMap::ibmqx2();
    for (int trial = 0; trial < 20; trial++) {
        auto once = transpile(qsum::testing::random_circuit(5, 12, rng), map).circuit;
        auto twice = transpile(once, map);
        EXPECT_EQ(twice.circuit.ops(), once.ops());
        EXPECT_TRUE(twice.report.rewrites.empty());
    }
}

TEST(Transpile, unreachable_pair_is_a_routing_error) {
    CouplingMap split(4, {{0, 1}, {2, 3}});
    Circuit c(4);
    c.append(GateOp::cnot(0, 3));
    try {
        transpile(c, split);
        FAIL() << "expected RoutingError";
    } catch (const RoutingError &e) {
        EXPECT_NE(std::string(e.what()).find("q[0]"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("q[3]"), std::string::npos);
    }
    EXPECT_THROW(transpile(Circuit(6), CouplingMap::ibmqx2()), std::invalid_argument);
}

TEST(Transpile, layout_places_logical_qubits) {
    Circuit c(2);
    c.append(GateOp::h(0)).append(GateOp::cnot(0, 1));
    TranspileOptions options;
    options.layout = {3, 4};
    auto r = transpile(c, CouplingMap::ibmqx2(), options);
    EXPECT_EQ(r.circuit.qubit_count(), 5);
    EXPECT_EQ(r.circuit.ops(), (std::vector<GateOp>{GateOp::h(3), GateOp::cnot(3, 4)}));
    EXPECT_EQ(r.report.layout, (std::vector<int>{3, 4}));
    EXPECT_TRUE(same_unitary(relabel(c, options.layout, 5), r.circuit));

    options.layout = {0};
    EXPECT_THROW(transpile(c, CouplingMap::ibmqx2(), options), std::invalid_argument);
    std::vector<int> clash{1, 1};
    EXPECT_THROW(relabel(c, clash, 5), std::invalid_argument);
    std::vector<int> far{0, 7};
    EXPECT_THROW(relabel(c, far, 5), std::out_of_range);
}

TEST(Transpile, literal_oracle_on_device) {
    // One-qubit literal oracle with transmitted qubit 1 and scratch qubit 4.
    std::vector<int> t{1}, s{4};
    auto oracle = oracle_circuit(1, t, OracleMode::Literal, s).widened(5);
    auto map = CouplingMap::ibmqx2();
    auto r = transpile(oracle, map);
    EXPECT_TRUE(validate(r.circuit, map).empty());
    EXPECT_TRUE(same_unitary(oracle, r.circuit));
}
