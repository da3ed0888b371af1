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
#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qsum {

CouplingMap::CouplingMap(int qubit_count, std::set<std::pair<int, int>> edges)
    : qubit_count_(qubit_count), edges_(std::move(edges)) {
    if (qubit_count < 1) {
        throw std::invalid_argument("coupling map needs at least one qubit");
    }
    for (const auto &[c, t] : edges_) {
        if (c < 0 || t < 0 || c >= qubit_count || t >= qubit_count) {
            throw std::out_of_range("coupling edge " + std::to_string(c) + "->" + std::to_string(t) +
                                    " out of range for " + std::to_string(qubit_count) + " qubits");
        }
        if (c == t) {
            throw std::invalid_argument("coupling map has a self-edge on qubit " + std::to_string(c));
        }
    }
}

CouplingMap CouplingMap::ibmqx2() { return CouplingMap(5, {{0, 1}, {0, 2}, {1, 2}, {3, 2}, {3, 4}, {4, 2}}); }

int CouplingMap::degree(int qubit) const {
    int d = 0;
    for (const auto &[c, t] : edges_) {
        d += (c == qubit) + (t == qubit);
    }
    return d;
}

std::vector<int> CouplingMap::neighbours(int qubit) const {
    std::vector<int> out;
    for (int v = 0; v < qubit_count_; v++) {
        if (v != qubit && adjacent(qubit, v)) {
            out.push_back(v);
        }
    }
    std::stable_sort(out.begin(), out.end(), [this](int a, int b) { return degree(a) > degree(b); });
    return out;
}

CouplingMap parse_coupling_map(const std::string &json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("coupling map is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("qubits") || !doc["qubits"].is_number_integer()) {
        throw std::invalid_argument("coupling map: field 'qubits' must be an integer");
    }
    if (!doc.contains("edges") || !doc["edges"].is_array()) {
        throw std::invalid_argument("coupling map: field 'edges' must be a list of [control, target] pairs");
    }
    std::set<std::pair<int, int>> edges;
    for (const auto &e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw std::invalid_argument("coupling map: field 'edges' must be a list of [control, target] pairs");
        }
        edges.emplace(e[0].get<int>(), e[1].get<int>());
    }
    return CouplingMap(doc["qubits"].get<int>(), std::move(edges));
}

CouplingMap load_coupling_map(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open coupling map file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_coupling_map(buf.str());
}

std::string to_json(const CouplingMap &map) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &[c, t] : map.edges()) {
        edges.push_back({c, t});
    }
    return nlohmann::json{{"qubits", map.qubit_count()}, {"edges", edges}}.dump();
}

namespace {

bool is_physical(GateKind kind) {
    return kind == GateKind::H || kind == GateKind::X || kind == GateKind::CNOT || kind == GateKind::PHASE;
}

void require_fits(int qubit_count, const CouplingMap &map) {
    if (qubit_count > map.qubit_count()) {
        throw std::invalid_argument("circuit has " + std::to_string(qubit_count) + " qubits but the coupling map only " +
                                    std::to_string(map.qubit_count()));
    }
}

std::string edge_name(int a, int b) { return "q[" + std::to_string(a) + "] -> q[" + std::to_string(b) + "]"; }

// An op under construction, remembering where it came from.
struct Tagged {
    GateOp op;
    bool synthesized;
    std::size_t origin;
};

class Rewriter {
   public:
    Rewriter(const CouplingMap &map, TranspileReport &report) : map_(map), report_(report) {}

    std::vector<Tagged> lower(const std::vector<Tagged> &in) {
        std::vector<Tagged> out;
        for (const auto &t : in) {
            const GateOp &op = t.op;
            switch (op.kind) {
                case GateKind::CZ: {
                    int c = op.controls[0], tg = op.targets[0];
                    record("decompose-cz", t.origin, {c, tg});
                    out.push_back({GateOp::h(tg), true, t.origin});
                    out.push_back({GateOp::cnot(c, tg), true, t.origin});
                    out.push_back({GateOp::h(tg), true, t.origin});
                    break;
                }
                case GateKind::CPHASE: {
                    int c = op.controls[0], tg = op.targets[0];
                    record("decompose-cphase", t.origin, {c, tg});
                    out.push_back({GateOp::phase(c, op.angle / 2), true, t.origin});
                    out.push_back({GateOp::cnot(c, tg), true, t.origin});
                    out.push_back({GateOp::phase(tg, -op.angle / 2), true, t.origin});
                    out.push_back({GateOp::cnot(c, tg), true, t.origin});
                    out.push_back({GateOp::phase(tg, op.angle / 2), true, t.origin});
                    break;
                }
                case GateKind::SWAP: {
                    int a = op.targets[0], b = op.targets[1];
                    record("decompose-swap", t.origin, {a, b});
                    out.push_back({GateOp::cnot(a, b), true, t.origin});
                    out.push_back({GateOp::cnot(b, a), true, t.origin});
                    out.push_back({GateOp::cnot(a, b), true, t.origin});
                    break;
                }
                default:
                    out.push_back(t);
            }
        }
        return out;
    }

    std::vector<Tagged> legalize(const std::vector<Tagged> &in) {
        std::vector<Tagged> out;
        for (const auto &t : in) {
            if (t.op.kind != GateKind::CNOT) {
                out.push_back(t);
                continue;
            }
            int a = t.op.controls[0], b = t.op.targets[0];
            if (map_.allows(a, b)) {
                out.push_back(t);
            } else if (map_.allows(b, a)) {
                record("reverse-cnot", t.origin, {a, b});
                emit_cnot(a, b, t.origin, out);
            } else {
                route(a, b, t.origin, out);
            }
        }
        return out;
    }

    std::vector<Tagged> cancel_h_pairs(std::vector<Tagged> ops) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < ops.size() && !changed; i++) {
                if (ops[i].op.kind != GateKind::H) {
                    continue;
                }
                int q = ops[i].op.targets[0];
                for (std::size_t j = i + 1; j < ops.size(); j++) {
                    auto qs = ops[j].op.qubits();
                    if (std::find(qs.begin(), qs.end(), q) == qs.end()) {
                        continue;
                    }
                    if (ops[j].op.kind == GateKind::H && (ops[i].synthesized || ops[j].synthesized)) {
                        record("cancel-h-pair", ops[i].origin, {q});
                        ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
                        ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(i));
                        changed = true;
                    }
                    break;
                }
            }
        }
        return ops;
    }

    int max_qubit() const { return max_qubit_; }

   private:
    void record(const char *rule, std::size_t origin, std::vector<int> qubits) {
        report_.rewrites.push_back({rule, origin, std::move(qubits)});
    }

    // CNOT(a -> b) using whichever direction the map has; adjacency is assumed.
    void emit_cnot(int a, int b, std::size_t origin, std::vector<Tagged> &out) {
        max_qubit_ = std::max({max_qubit_, a, b});
        if (map_.allows(a, b)) {
            out.push_back({GateOp::cnot(a, b), true, origin});
            return;
        }
        for (const auto &g : reverse_cnot(GateOp::cnot(a, b))) {
            out.push_back({g, true, origin});
        }
    }

    void emit_swap(int a, int b, std::size_t origin, std::vector<Tagged> &out) {
        emit_cnot(a, b, origin, out);
        emit_cnot(b, a, origin, out);
        emit_cnot(a, b, origin, out);
    }

    // Breadth-first search over undirected adjacency; neighbours are tried
    // in descending degree so ties favour well-connected hubs.
    std::vector<int> shortest_path(int from, int to) const {
        std::vector<int> parent(static_cast<std::size_t>(map_.qubit_count()), -1);
        std::deque<int> frontier{from};
        parent[static_cast<std::size_t>(from)] = from;
        while (!frontier.empty()) {
            int v = frontier.front();
            frontier.pop_front();
            if (v == to) {
                break;
            }
            for (int w : map_.neighbours(v)) {
                if (parent[static_cast<std::size_t>(w)] < 0) {
                    parent[static_cast<std::size_t>(w)] = v;
                    frontier.push_back(w);
                }
            }
        }
        if (parent[static_cast<std::size_t>(to)] < 0) {
            return {};
        }
        std::vector<int> path{to};
        while (path.back() != from) {
            path.push_back(parent[static_cast<std::size_t>(path.back())]);
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    void route(int a, int b, std::size_t origin, std::vector<Tagged> &out) {
        auto path = shortest_path(a, b);
        if (path.empty()) {
            throw RoutingError("no coupling path between q[" + std::to_string(a) + "] and q[" + std::to_string(b) + "]");
        }
        record("route-swap", origin, path);
        // Walk the control up to the neighbour of b, act, then walk it back.
        const std::size_t hops = path.size() - 2;
        for (std::size_t i = 0; i < hops; i++) {
            emit_swap(path[i], path[i + 1], origin, out);
        }
        emit_cnot(path[hops], b, origin, out);
        for (std::size_t i = hops; i-- > 0;) {
            emit_swap(path[i], path[i + 1], origin, out);
        }
    }

    const CouplingMap &map_;
    TranspileReport &report_;
    int max_qubit_ = -1;
};

}  // namespace

std::vector<Violation> validate(const Circuit &circuit, const CouplingMap &map) {
    require_fits(circuit.qubit_count(), map);
    std::vector<Violation> out;
    for (std::size_t i = 0; i < circuit.ops().size(); i++) {
        const auto &op = circuit.ops()[i];
        if (!is_physical(op.kind)) {
            out.push_back({i, std::string("gate '") + gate_name(op.kind) + "' is not in the physical gate set"});
        } else if (op.kind == GateKind::CNOT && !map.allows(op.controls[0], op.targets[0])) {
            out.push_back({i, "no coupling edge " + edge_name(op.controls[0], op.targets[0])});
        }
    }
    return out;
}

Circuit decompose_cz(const Circuit &circuit) {
    Circuit out(circuit.qubit_count());
    for (const auto &r : circuit.registers()) {
        out.add_register(r.name, r.qubits);
    }
    for (const auto &op : circuit.ops()) {
        if (op.kind == GateKind::CZ) {
            out.append(GateOp::h(op.targets[0]));
            out.append(GateOp::cnot(op.controls[0], op.targets[0]));
            out.append(GateOp::h(op.targets[0]));
        } else {
            out.append(op);
        }
    }
    return out;
}

std::vector<GateOp> reverse_cnot(const GateOp &cnot) {
    if (cnot.kind != GateKind::CNOT) {
        throw std::invalid_argument("reverse_cnot expects a CNOT");
    }
    int a = cnot.controls.at(0), b = cnot.targets.at(0);
    return {GateOp::h(a), GateOp::h(b), GateOp::cnot(b, a), GateOp::h(a), GateOp::h(b)};
}

Circuit relabel(const Circuit &circuit, std::span<const int> mapping, int qubit_count) {
    if (mapping.size() < static_cast<std::size_t>(circuit.qubit_count())) {
        throw std::invalid_argument("relabel mapping does not cover every qubit");
    }
    for (std::size_t i = 0; i < mapping.size(); i++) {
        if (mapping[i] < 0 || mapping[i] >= qubit_count) {
            throw std::out_of_range("relabel target " + std::to_string(mapping[i]) + " out of range");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (mapping[i] == mapping[j]) {
                throw std::invalid_argument("relabel mapping is not injective");
            }
        }
    }
    auto move = [&](std::vector<int> qs) {
        for (int &q : qs) {
            q = mapping[static_cast<std::size_t>(q)];
        }
        return qs;
    };
    Circuit out(qubit_count);
    for (const auto &r : circuit.registers()) {
        out.add_register(r.name, move(r.qubits));
    }
    for (const auto &op : circuit.ops()) {
        out.append(GateOp{op.kind, move(op.controls), move(op.targets), op.angle});
    }
    return out;
}

TranspileResult transpile(const Circuit &circuit, const CouplingMap &map, const TranspileOptions &options) {
    TranspileReport report;
    report.original_gate_count = circuit.size();

    Circuit placed = circuit;
    if (!options.layout.empty()) {
        if (options.layout.size() != static_cast<std::size_t>(circuit.qubit_count())) {
            throw std::invalid_argument("layout must give a physical qubit for each of the " +
                                        std::to_string(circuit.qubit_count()) + " circuit qubits");
        }
        placed = relabel(circuit, options.layout, map.qubit_count());
        report.layout = options.layout;
    }
    require_fits(placed.qubit_count(), map);

    std::vector<Tagged> ops;
    for (std::size_t i = 0; i < placed.ops().size(); i++) {
        ops.push_back({placed.ops()[i], false, i});
    }
    Rewriter rewriter(map, report);
    ops = rewriter.lower(ops);
    ops = rewriter.legalize(ops);
    ops = rewriter.cancel_h_pairs(std::move(ops));

    int width = std::max(placed.qubit_count(), rewriter.max_qubit() + 1);
    Circuit out(width);
    for (const auto &r : placed.registers()) {
        out.add_register(r.name, r.qubits);
    }
    for (auto &t : ops) {
        out.append(std::move(t.op));
    }
    report.rewritten_gate_count = out.size();
    return {std::move(out), std::move(report)};
}

}  // namespace qsum
