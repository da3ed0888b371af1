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

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsum/gate.hpp"
#include "qsum/statevector.hpp"

namespace qsum {

/// Largest circuit circuit_to_matrix will expand.
inline constexpr int kMaxMatrixQubits = 10;

struct Register {
    std::string name;
    std::vector<int> qubits;

    bool operator==(const Register &) const = default;
};

/// Ordered gate list over a fixed number of qubits, with optional named registers.
class Circuit {
   public:
    explicit Circuit(int qubit_count);

    int qubit_count() const { return qubit_count_; }
    const std::vector<GateOp> &ops() const { return ops_; }
    const std::vector<Register> &registers() const { return registers_; }
    std::size_t size() const { return ops_.size(); }
    bool empty() const { return ops_.empty(); }

    /// Validates the gate against qubit_count() before appending.
    Circuit &append(GateOp gate);

    /// Appends every op of `other`, which must not be wider than this circuit.
    /// Registers of `other` are not copied.
    Circuit &append(const Circuit &other);

    /// Registers must be in range and pairwise disjoint with existing ones.
    Circuit &add_register(std::string name, std::vector<int> qubits);

    /// Throws std::out_of_range if no register has that name.
    const Register &find_register(const std::string &name) const;

    /// Reversed op order with each op inverted.
    Circuit inverse() const;

    /// Same ops on a wider (or equal) qubit count.
    Circuit widened(int qubit_count) const;

    bool operator==(const Circuit &) const = default;

   private:
    int qubit_count_;
    std::vector<GateOp> ops_;
    std::vector<Register> registers_;
};

/// Runs every op of `circuit` on `state` in order.
void run_circuit(StateVector &state, const Circuit &circuit);

/// Quantum Fourier transform on `reg` (reg[0] is the least significant bit).
///
/// On |y> it produces sum_j exp(2 pi i y j / 2^n) |j> / sqrt(2^n). The
/// output is bit-order corrected with trailing SWAPs, so no relabeling is
/// needed downstream. For n = 1 this is a single Hadamard.
Circuit qft(std::span<const int> reg);

/// Exact inverse of qft(reg).
Circuit iqft(std::span<const int> reg);

/// CNOT from each home qubit onto its transmitted partner. Self-inverse.
Circuit entangle_registers(std::span<const int> home, std::span<const int> transmitted);

enum class OracleMode { Literal, Kickback };

const char *to_string(OracleMode mode);
OracleMode parse_oracle_mode(const std::string &text);

/**
 * The party oracle: multiplies every |j>_t branch by exp(2 pi i y j / 2^n).
 *
 * Kickback mode emits one PHASE per transmitted qubit k with angle
 * 2 pi y 2^k / 2^n. Literal mode acts on a scratch register that the caller
 * has prepared in |y>: for each transmitted qubit k it applies controlled
 * U^(2^k), where U|x> = exp(2 pi i x / 2^n)|x>, specialised to the set bits
 * of y. Controlled phases of pi come out as H, CNOT, H on the scratch qubit.
 * Factors that are the identity are omitted in both modes.
 */
Circuit oracle_circuit(std::uint64_t secret, std::span<const int> transmitted, OracleMode mode,
                       std::span<const int> scratch = {});

/// Dense unitary of `circuit` (column k is the image of basis state k).
/// Built from each gate's local matrix, independent of the statevector kernels.
/// Throws std::length_error above kMaxMatrixQubits.
Eigen::MatrixXcd circuit_to_matrix(const Circuit &circuit);

/// 2x2 or 4x4 matrix of a gate on its own qubits, ordered as gate.qubits()
/// with the first listed qubit as the least significant local bit.
Eigen::MatrixXcd gate_local_matrix(const GateOp &gate);

/// True if a * b^dagger equals lambda * I for some unit-modulus lambda,
/// within `tolerance` element-wise.
bool equal_up_to_global_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tolerance = kTolerance);

/// Plain-text form: a `qubits N` header, then one gate per line such as
/// `h q[0]`, `cx q[1] q[2]` or `p(1.5707963267948966) q[3]`. Controls are
/// listed before targets.
std::string to_text(const Circuit &circuit);

/// Parses to_text output. Blank lines and `#` comments are ignored.
/// Throws std::invalid_argument with the line number on malformed input.
Circuit parse_circuit(const std::string &text);

}  // namespace qsum
