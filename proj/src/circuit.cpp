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

#include "qsum/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace qsum {

Circuit::Circuit(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

Circuit &Circuit::append(GateOp gate) {
    validate_gate(gate, qubit_count_);
    ops_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.qubit_count_ > qubit_count_) {
        throw std::invalid_argument("cannot append a " + std::to_string(other.qubit_count_) + "-qubit circuit to a " +
                                    std::to_string(qubit_count_) + "-qubit circuit");
    }
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    return *this;
}

Circuit &Circuit::add_register(std::string name, std::vector<int> qubits) {
    for (int q : qubits) {
        if (q < 0 || q >= qubit_count_) {
            throw std::out_of_range("register '" + name + "' uses qubit " + std::to_string(q) + " out of range");
        }
        if (std::count(qubits.begin(), qubits.end(), q) > 1) {
            throw std::invalid_argument("register '" + name + "' repeats qubit " + std::to_string(q));
        }
        for (const auto &r : registers_) {
            if (std::find(r.qubits.begin(), r.qubits.end(), q) != r.qubits.end()) {
                throw std::invalid_argument("register '" + name + "' overlaps register '" + r.name + "'");
            }
        }
    }
    for (const auto &r : registers_) {
        if (r.name == name) {
            throw std::invalid_argument("duplicate register name '" + name + "'");
        }
    }
    registers_.push_back({std::move(name), std::move(qubits)});
    return *this;
}

const Register &Circuit::find_register(const std::string &name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    throw std::out_of_range("no register named '" + name + "'");
}

Circuit Circuit::inverse() const {
    Circuit inv(qubit_count_);
    inv.registers_ = registers_;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        inv.ops_.push_back(it->inverse());
    }
    return inv;
}

Circuit Circuit::widened(int qubit_count) const {
    if (qubit_count < qubit_count_) {
        throw std::invalid_argument("cannot narrow a circuit");
    }
    Circuit wide = *this;
    wide.qubit_count_ = qubit_count;
    return wide;
}

void run_circuit(StateVector &state, const Circuit &circuit) {
    if (circuit.qubit_count() > state.qubit_count()) {
        throw std::invalid_argument("circuit is wider than the state");
    }
    for (const auto &op : circuit.ops()) {
        state.apply(op);
    }
}

namespace {

void check_distinct(std::span<const int> qubits, const char *what) {
    for (std::size_t i = 0; i < qubits.size(); i++) {
        if (qubits[i] < 0) {
            throw std::out_of_range(std::string(what) + " has a negative qubit index");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument(std::string(what) + " repeats qubit " + std::to_string(qubits[i]));
            }
        }
    }
}

int width_of(std::initializer_list<std::span<const int>> regs) {
    int width = 0;
    for (auto r : regs) {
        for (int q : r) {
            width = std::max(width, q + 1);
        }
    }
    return std::max(width, 1);
}

}  // namespace

Circuit qft(std::span<const int> reg) {
    if (reg.empty()) {
        throw std::invalid_argument("qft needs a non-empty register");
    }
    check_distinct(reg, "qft register");
    const int n = static_cast<int>(reg.size());
    Circuit c(width_of({reg}));
    for (int k = n - 1; k >= 0; k--) {
        c.append(GateOp::h(reg[k]));
        for (int m = k - 1; m >= 0; m--) {
            c.append(GateOp::cphase(reg[m], reg[k], std::numbers::pi / static_cast<double>(1ULL << (k - m))));
        }
    }
    for (int i = 0; i < n / 2; i++) {
        c.append(GateOp::swap(reg[i], reg[n - 1 - i]));
    }
    return c;
}

Circuit iqft(std::span<const int> reg) { return qft(reg).inverse(); }

Circuit entangle_registers(std::span<const int> home, std::span<const int> transmitted) {
    if (home.size() != transmitted.size()) {
        throw std::invalid_argument("home and transmitted registers differ in length");
    }
    if (home.empty()) {
        throw std::invalid_argument("registers must be non-empty");
    }
    std::vector<int> all(home.begin(), home.end());
    all.insert(all.end(), transmitted.begin(), transmitted.end());
    check_distinct(all, "home/transmitted registers");
    Circuit c(width_of({home, transmitted}));
    for (std::size_t i = 0; i < home.size(); i++) {
        c.append(GateOp::cnot(home[i], transmitted[i]));
    }
    return c;
}

const char *to_string(OracleMode mode) { return mode == OracleMode::Literal ? "literal" : "kickback"; }

OracleMode parse_oracle_mode(const std::string &text) {
    if (text == "literal") {
        return OracleMode::Literal;
    }
    if (text == "kickback") {
        return OracleMode::Kickback;
    }
    throw std::invalid_argument("unknown oracle mode '" + text + "' (expected literal or kickback)");
}

Circuit oracle_circuit(std::uint64_t secret, std::span<const int> transmitted, OracleMode mode,
                       std::span<const int> scratch) {
    const int n = static_cast<int>(transmitted.size());
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("oracle needs between 1 and " + std::to_string(kMaxQubits) + " transmitted qubits");
    }
    const std::uint64_t modulus = 1ULL << n;
    if (secret >= modulus) {
        throw std::out_of_range("secret out of range for a " + std::to_string(n) + "-qubit register");
    }
    const double unit = 2.0 * std::numbers::pi / static_cast<double>(modulus);

    if (mode == OracleMode::Kickback) {
        check_distinct(transmitted, "transmitted register");
        Circuit c(width_of({transmitted, scratch}));
        for (int k = 0; k < n; k++) {
            std::uint64_t turns = (secret << k) % modulus;
            if (turns != 0) {
                c.append(GateOp::phase(transmitted[k], unit * static_cast<double>(turns)));
            }
        }
        return c;
    }

    if (scratch.size() != transmitted.size()) {
        throw std::invalid_argument("literal oracle needs a scratch register as wide as the transmitted register");
    }
    std::vector<int> all(transmitted.begin(), transmitted.end());
    all.insert(all.end(), scratch.begin(), scratch.end());
    check_distinct(all, "transmitted/scratch registers");
    Circuit c(width_of({transmitted, scratch}));
    for (int k = 0; k < n; k++) {
        for (int b = 0; b + k < n; b++) {
            if (((secret >> b) & 1ULL) == 0) {
                continue;
            }
            // Controlled U^(2^k) restricted to scratch bit b.
            if (b + k == n - 1) {
                c.append(GateOp::h(scratch[b]));
                c.append(GateOp::cnot(transmitted[k], scratch[b]));
                c.append(GateOp::h(scratch[b]));
            } else {
                c.append(GateOp::cphase(transmitted[k], scratch[b], unit * static_cast<double>(1ULL << (b + k))));
            }
        }
    }
    return c;
}

Eigen::MatrixXcd gate_local_matrix(const GateOp &gate) {
    using M = Eigen::MatrixXcd;
    const double r = 1.0 / std::sqrt(2.0);
    switch (gate.kind) {
        case GateKind::H: {
            M m(2, 2);
            m << r, r, r, -r;
            return m;
        }
        case GateKind::X: {
            M m(2, 2);
            m << 0, 1, 1, 0;
            return m;
        }
        case GateKind::PHASE: {
            M m = M::Identity(2, 2);
            m(1, 1) = std::polar(1.0, gate.angle);
            return m;
        }
        case GateKind::CNOT: {
            // Local order (control, target): index 1 = control set, target clear.
            M m = M::Zero(4, 4);
            m(0, 0) = 1;
            m(2, 2) = 1;
            m(3, 1) = 1;
            m(1, 3) = 1;
            return m;
        }
        case GateKind::CZ: {
            M m = M::Identity(4, 4);
            m(3, 3) = -1;
            return m;
        }
        case GateKind::CPHASE: {
            M m = M::Identity(4, 4);
            m(3, 3) = std::polar(1.0, gate.angle);
            return m;
        }
        case GateKind::SWAP: {
            M m = M::Zero(4, 4);
            m(0, 0) = 1;
            m(3, 3) = 1;
            m(1, 2) = 1;
            m(2, 1) = 1;
            return m;
        }
    }
    throw std::logic_error("unhandled gate kind");
}

Eigen::MatrixXcd circuit_to_matrix(const Circuit &circuit) {
    const int q = circuit.qubit_count();
    if (q > kMaxMatrixQubits) {
        throw std::length_error("circuit_to_matrix supports at most " + std::to_string(kMaxMatrixQubits) +
                                " qubits, got " + std::to_string(q));
    }
    const Eigen::Index dim = Eigen::Index{1} << q;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &gate : circuit.ops()) {
        const auto local = gate_local_matrix(gate);
        const auto qubits = gate.qubits();
        const Eigen::Index local_dim = local.rows();
        std::uint64_t gate_mask = 0;
        for (int b : qubits) {
            gate_mask |= 1ULL << b;
        }
        // Row offset of each local basis state.
        std::vector<Eigen::Index> offset(static_cast<std::size_t>(local_dim));
        for (Eigen::Index l = 0; l < local_dim; l++) {
            std::uint64_t bits = 0;
            for (std::size_t k = 0; k < qubits.size(); k++) {
                bits |= ((static_cast<std::uint64_t>(l) >> k) & 1ULL) << qubits[k];
            }
            offset[static_cast<std::size_t>(l)] = static_cast<Eigen::Index>(bits);
        }
        Eigen::VectorXcd block(local_dim);
        for (Eigen::Index base = 0; base < dim; base++) {
            if (static_cast<std::uint64_t>(base) & gate_mask) {
                continue;
            }
            for (Eigen::Index col = 0; col < dim; col++) {
                for (Eigen::Index l = 0; l < local_dim; l++) {
                    block(l) = u(base + offset[static_cast<std::size_t>(l)], col);
                }
                Eigen::VectorXcd out = local * block;
                for (Eigen::Index l = 0; l < local_dim; l++) {
                    u(base + offset[static_cast<std::size_t>(l)], col) = out(l);
                }
            }
        }
    }
    return u;
}

bool equal_up_to_global_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tolerance) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        return false;
    }
    Eigen::MatrixXcd product = a * b.adjoint();
    Complex lambda = product(0, 0);
    if (std::abs(std::abs(lambda) - 1.0) > tolerance) {
        return false;
    }
    product.diagonal().array() -= lambda;
    return product.cwiseAbs().maxCoeff() <= tolerance;
}

std::string to_text(const Circuit &circuit) {
    std::string out = "qubits " + std::to_string(circuit.qubit_count()) + "\n";
    for (const auto &op : circuit.ops()) {
        out += to_string(op);
        out += '\n';
    }
    return out;
}

namespace {

[[noreturn]] void parse_error(int line, const std::string &what) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

int parse_qubit_token(const std::string &token, int line) {
    if (token.size() < 4 || token.compare(0, 2, "q[") != 0 || token.back() != ']') {
        parse_error(line, "expected q[<index>], got '" + token + "'");
    }
    std::string digits = token.substr(2, token.size() - 3);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
        parse_error(line, "bad qubit index in '" + token + "'");
    }
    return std::stoi(digits);
}

}  // namespace

Circuit parse_circuit(const std::string &text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::optional<Circuit> circuit;
    while (std::getline(in, raw)) {
        line_no++;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream line(raw);
        std::string head;
        if (!(line >> head)) {
            continue;
        }
        if (!circuit) {
            int n = 0;
            if (head != "qubits" || !(line >> n)) {
                parse_error(line_no, "expected header 'qubits N'");
            }
            circuit.emplace(n);
            continue;
        }

        std::string name = head;
        double angle = 0.0;
        bool has_angle = false;
        if (auto open = head.find('('); open != std::string::npos) {
            if (head.back() != ')') {
                parse_error(line_no, "unterminated angle in '" + head + "'");
            }
            name = head.substr(0, open);
            std::string value = head.substr(open + 1, head.size() - open - 2);
            try {
                std::size_t used = 0;
                angle = std::stod(value, &used);
                if (used != value.size()) {
                    throw std::invalid_argument(value);
                }
            } catch (const std::exception &) {
                parse_error(line_no, "bad angle '" + value + "'");
            }
            has_angle = true;
        }
        std::vector<int> qubits;
        std::string token;
        while (line >> token) {
            qubits.push_back(parse_qubit_token(token, line_no));
        }

        GateOp op;
        if (name == "h") {
            op.kind = GateKind::H;
        } else if (name == "x") {
            op.kind = GateKind::X;
        } else if (name == "cx") {
            op.kind = GateKind::CNOT;
        } else if (name == "cz") {
            op.kind = GateKind::CZ;
        } else if (name == "p") {
            op.kind = GateKind::PHASE;
        } else if (name == "cp") {
            op.kind = GateKind::CPHASE;
        } else if (name == "swap") {
            op.kind = GateKind::SWAP;
        } else {
            parse_error(line_no, "unknown gate '" + name + "'");
        }
        bool wants_angle = op.kind == GateKind::PHASE || op.kind == GateKind::CPHASE;
        if (wants_angle != has_angle) {
            parse_error(line_no, wants_angle ? "gate '" + name + "' needs an angle" : "gate '" + name + "' takes no angle");
        }
        op.angle = angle;
        bool controlled = op.kind == GateKind::CNOT || op.kind == GateKind::CZ || op.kind == GateKind::CPHASE;
        if (controlled && !qubits.empty()) {
            op.controls.push_back(qubits.front());
            qubits.erase(qubits.begin());
        }
        op.targets = std::move(qubits);
        try {
            circuit->append(std::move(op));
        } catch (const std::exception &e) {
            parse_error(line_no, e.what());
        }
    }
    if (!circuit) {
        throw std::invalid_argument("empty circuit text (missing 'qubits N' header)");
    }
    return std::move(*circuit);
}

}  // namespace qsum
