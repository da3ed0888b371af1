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

// Generators shared by the property tests.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qsum/circuit.hpp"
#include "qsum/statevector.hpp"

namespace qsum::testing {

inline StateVector random_state(int qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    std::vector<Complex> amps(std::size_t{1} << qubits);
    double total = 0;
    for (auto &a : amps) {
        a = {normal(rng), normal(rng)};
        total += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(total);
    }
    return StateVector(std::move(amps));
}

inline GateOp random_gate(int qubits, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> pick_qubit(0, qubits - 1);
    std::uniform_real_distribution<double> pick_angle(-std::numbers::pi, std::numbers::pi);
    int a = pick_qubit(rng);
    int b = pick_qubit(rng);
    while (qubits > 1 && b == a) {
        b = pick_qubit(rng);
    }
    int kind = std::uniform_int_distribution<int>(0, qubits > 1 ? 6 : 2)(rng);
    switch (kind) {
        case 0:
            return GateOp::h(a);
        case 1:
            return GateOp::x(a);
        case 2:
            return GateOp::phase(a, pick_angle(rng));
        case 3:
            return GateOp::cnot(a, b);
        case 4:
            return GateOp::cz(a, b);
        case 5:
            return GateOp::cphase(a, b, pick_angle(rng));
        default:
            return GateOp::swap(a, b);
    }
}

inline Circuit random_circuit(int qubits, int gates, std::mt19937_64 &rng) {
    Circuit c(qubits);
    for (int i = 0; i < gates; i++) {
        c.append(random_gate(qubits, rng));
    }
    return c;
}

/// Random density matrix G G^dagger / Tr(G G^dagger) with Gaussian G.
inline DensityMatrix random_density_matrix(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd g(dim, dim);
    for (int r = 0; r < dim; r++) {
        for (int c = 0; c < dim; c++) {
            g(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityMatrix(rho);
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

inline std::uint64_t embed(std::uint64_t value, std::span<const int> reg) {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < reg.size(); k++) {
        index |= ((value >> k) & 1ULL) << reg[k];
    }
    return index;
}

/// Block of `full` acting on register `reg` while register `fixed` holds
/// basis value `fixed_value` (every other qubit held at 0). `leak` receives
/// the largest probability weight any block column sends outside the block.
inline Eigen::MatrixXcd fixed_register_block(const Eigen::MatrixXcd &full, std::span<const int> reg,
                                             std::span<const int> fixed, std::uint64_t fixed_value,
                                             double *leak = nullptr) {
    const Eigen::Index dim = Eigen::Index{1} << reg.size();
    const std::uint64_t anchor = embed(fixed_value, fixed);
    Eigen::MatrixXcd block(dim, dim);
    double worst = 0;
    for (Eigen::Index c = 0; c < dim; c++) {
        const auto col = static_cast<Eigen::Index>(embed(static_cast<std::uint64_t>(c), reg) | anchor);
        double kept = 0;
        for (Eigen::Index r = 0; r < dim; r++) {
            const auto row = static_cast<Eigen::Index>(embed(static_cast<std::uint64_t>(r), reg) | anchor);
            block(r, c) = full(row, col);
            kept += std::norm(block(r, c));
        }
        worst = std::max(worst, 1.0 - kept);
    }
    if (leak != nullptr) {
        *leak = worst;
    }
    return block;
}

}  // namespace qsum::testing
