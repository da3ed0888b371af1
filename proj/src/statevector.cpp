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

#include "qsum/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsum {

namespace {

int log2_exact(std::size_t n) {
    if (n == 0 || !std::has_single_bit(n)) {
        throw std::invalid_argument("dimension " + std::to_string(n) + " is not a power of two");
    }
    return std::countr_zero(n);
}

void check_register(std::span<const int> qubits, int qubit_count) {
    for (std::size_t i = 0; i < qubits.size(); i++) {
        if (qubits[i] < 0 || qubits[i] >= qubit_count) {
            throw std::out_of_range("qubit index " + std::to_string(qubits[i]) + " out of range for " +
                                    std::to_string(qubit_count) + " qubits");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("duplicate qubit index " + std::to_string(qubits[i]));
            }
        }
    }
}

// Gathers the bits of `index` at positions `qubits` into a dense value.
std::uint64_t extract_bits(std::uint64_t index, std::span<const int> qubits) {
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < qubits.size(); k++) {
        value |= ((index >> qubits[k]) & 1ULL) << k;
    }
    return value;
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    qubit_count_ = log2_exact(amplitudes_.size());
    if (qubit_count_ < 1 || qubit_count_ > kMaxQubits) {
        throw std::invalid_argument("statevector must have between 1 and " + std::to_string(kMaxQubits) +
                                    " qubits");
    }
    for (const auto &a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("non-finite amplitude");
        }
    }
    if (std::abs(norm_squared() - 1.0) > kTolerance) {
        throw std::invalid_argument("statevector is not normalized");
    }
}

StateVector StateVector::basis(int qubit_count, std::uint64_t index) {
    if (qubit_count < 1 || qubit_count > kMaxQubits) {
        throw std::invalid_argument("qubit count must be between 1 and " + std::to_string(kMaxQubits));
    }
    std::size_t dim = std::size_t{1} << qubit_count;
    if (index >= dim) {
        throw std::out_of_range("basis index " + std::to_string(index) + " out of range for " +
                                std::to_string(qubit_count) + " qubits");
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> probs(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), probs.begin(), [](Complex a) { return std::norm(a); });
    return probs;
}

void StateVector::apply_single(int target, std::uint64_t control_mask, const Complex (&m)[2][2]) {
    const std::uint64_t tbit = 1ULL << target;
    for (std::uint64_t i = 0; i < amplitudes_.size(); i++) {
        if ((i & tbit) || (i & control_mask) != control_mask) {
            continue;
        }
        Complex a0 = amplitudes_[i];
        Complex a1 = amplitudes_[i | tbit];
        amplitudes_[i] = m[0][0] * a0 + m[0][1] * a1;
        amplitudes_[i | tbit] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void StateVector::apply_diagonal(int target, std::uint64_t control_mask, Complex phase) {
    const std::uint64_t mask = control_mask | (1ULL << target);
    for (std::uint64_t i = 0; i < amplitudes_.size(); i++) {
        if ((i & mask) == mask) {
            amplitudes_[i] *= phase;
        }
    }
}

void StateVector::apply_swap(int a, int b) {
    const std::uint64_t abit = 1ULL << a;
    const std::uint64_t bbit = 1ULL << b;
    for (std::uint64_t i = 0; i < amplitudes_.size(); i++) {
        if ((i & abit) && !(i & bbit)) {
            std::swap(amplitudes_[i], amplitudes_[i ^ abit ^ bbit]);
        }
    }
}

void StateVector::apply(const GateOp &gate) {
    validate_gate(gate, qubit_count_);
    static const double r = 1.0 / std::sqrt(2.0);
    static const Complex kH[2][2] = {{r, r}, {r, -r}};
    static const Complex kX[2][2] = {{0, 1}, {1, 0}};

    std::uint64_t control_mask = 0;
    for (int c : gate.controls) {
        control_mask |= 1ULL << c;
    }
    int target = gate.targets[0];
    switch (gate.kind) {
        case GateKind::H:
            apply_single(target, 0, kH);
            break;
        case GateKind::X:
        case GateKind::CNOT:
            apply_single(target, control_mask, kX);
            break;
        case GateKind::CZ:
            apply_diagonal(target, control_mask, -1.0);
            break;
        case GateKind::PHASE:
        case GateKind::CPHASE:
            apply_diagonal(target, control_mask, std::polar(1.0, gate.angle));
            break;
        case GateKind::SWAP:
            apply_swap(gate.targets[0], gate.targets[1]);
            break;
    }
}

void StateVector::apply_pauli(int qubit, Pauli pauli) {
    if (qubit < 0 || qubit >= qubit_count_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range");
    }
    static const Complex kX[2][2] = {{0, 1}, {1, 0}};
    static const Complex kY[2][2] = {{0, Complex(0, -1)}, {Complex(0, 1), 0}};
    switch (pauli) {
        case Pauli::X:
            apply_single(qubit, 0, kX);
            break;
        case Pauli::Y:
            apply_single(qubit, 0, kY);
            break;
        case Pauli::Z:
            apply_diagonal(qubit, 0, -1.0);
            break;
    }
}

StateVector apply_gate(StateVector state, const GateOp &gate) {
    state.apply(gate);
    return state;
}

std::string to_bitstring(std::uint64_t value, int width) {
    std::string bits(static_cast<std::size_t>(width), '0');
    for (int k = 0; k < width; k++) {
        if ((value >> k) & 1ULL) {
            bits[static_cast<std::size_t>(width - 1 - k)] = '1';
        }
    }
    return bits;
}

std::uint64_t from_bitstring(const std::string &bits) {
    std::uint64_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("not a bitstring: '" + bits + "'");
        }
        value = (value << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

ShotHistogram::ShotHistogram(int bit_width, std::uint64_t shots, std::map<std::string, std::uint64_t> counts)
    : bit_width_(bit_width), shots_(shots), counts_(std::move(counts)) {
    if (shots_ == 0) {
        throw std::invalid_argument("histogram needs at least one shot");
    }
    std::uint64_t total = 0;
    for (const auto &[bits, n] : counts_) {
        if (static_cast<int>(bits.size()) != bit_width_) {
            throw std::invalid_argument("histogram key '" + bits + "' does not have width " +
                                        std::to_string(bit_width_));
        }
        total += n;
    }
    if (total != shots_) {
        throw std::invalid_argument("histogram counts do not sum to the shot count");
    }
}

std::uint64_t ShotHistogram::count(const std::string &bits) const {
    auto it = counts_.find(bits);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t ShotHistogram::mode() const {
    // Keys have equal width, so lexicographic order is numeric order.
    std::uint64_t best_count = 0;
    std::string best;
    for (const auto &[bits, n] : counts_) {
        if (n > best_count) {
            best_count = n;
            best = bits;
        }
    }
    return from_bitstring(best);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double shot_uniform(std::uint64_t seed, std::uint64_t shot) {
    std::uint64_t bits = splitmix64(seed + shot * 0x9E3779B97F4A7C15ULL);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::vector<double> cumulative(std::span<const double> probabilities) {
    std::vector<double> cdf(probabilities.size());
    double running = 0;
    for (std::size_t k = 0; k < probabilities.size(); k++) {
        running += probabilities[k];
        cdf[k] = running;
    }
    return cdf;
}

std::size_t sample_index(std::span<const double> cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it != cdf.end()) {
        return static_cast<std::size_t>(it - cdf.begin());
    }
    // u landed above the rounded total; fall back to the last outcome with mass.
    for (std::size_t k = cdf.size(); k-- > 0;) {
        double below = k == 0 ? 0.0 : cdf[k - 1];
        if (cdf[k] > below) {
            return k;
        }
    }
    throw std::domain_error("cannot sample from an all-zero distribution");
}

namespace {

ShotHistogram sample_histogram(std::span<const double> probs, int width, std::int64_t shots, std::uint64_t seed) {
    if (shots <= 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    auto cdf = cumulative(probs);
    std::vector<std::uint64_t> tally(probs.size());
    for (std::int64_t s = 0; s < shots; s++) {
        tally[sample_index(cdf, shot_uniform(seed, static_cast<std::uint64_t>(s)))]++;
    }
    std::map<std::string, std::uint64_t> counts;
    for (std::size_t k = 0; k < tally.size(); k++) {
        if (tally[k] != 0) {
            counts.emplace(to_bitstring(k, width), tally[k]);
        }
    }
    return ShotHistogram(width, static_cast<std::uint64_t>(shots), std::move(counts));
}

}  // namespace

ShotHistogram measure_all(const StateVector &state, std::int64_t shots, std::uint64_t seed) {
    auto probs = state.probabilities();
    return sample_histogram(probs, state.qubit_count(), shots, seed);
}

ShotHistogram measure_qubits(const StateVector &state, std::span<const int> qubits, std::int64_t shots,
                             std::uint64_t seed) {
    RegisterMeasurement m(state, std::vector<int>(qubits.begin(), qubits.end()));
    return sample_histogram(m.probabilities(), static_cast<int>(qubits.size()), shots, seed);
}

RegisterMeasurement::RegisterMeasurement(StateVector state, std::vector<int> qubits)
    : state_(std::move(state)), qubits_(std::move(qubits)) {
    if (qubits_.empty()) {
        throw std::invalid_argument("cannot measure an empty register");
    }
    check_register(qubits_, state_.qubit_count());
    probabilities_.assign(std::size_t{1} << qubits_.size(), 0.0);
    auto amps = state_.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); i++) {
        probabilities_[extract_bits(i, qubits_)] += std::norm(amps[i]);
    }
}

StateVector RegisterMeasurement::collapse(std::uint64_t outcome) const {
    if (outcome >= probabilities_.size()) {
        throw std::out_of_range("outcome " + std::to_string(outcome) + " out of range");
    }
    double p = probabilities_[outcome];
    if (p <= 0.0) {
        throw std::domain_error("outcome " + std::to_string(outcome) + " has zero probability");
    }
    double scale = 1.0 / std::sqrt(p);
    auto amps = state_.amplitudes();
    std::vector<Complex> out(amps.size());
    for (std::uint64_t i = 0; i < amps.size(); i++) {
        if (extract_bits(i, qubits_) == outcome) {
            out[i] = amps[i] * scale;
        }
    }
    return StateVector(std::move(out));
}

RegisterMeasurement measure_register(const StateVector &state, std::vector<int> qubits) {
    return RegisterMeasurement(state, std::move(qubits));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    log2_exact(static_cast<std::size_t>(entries_.rows()));
}

int DensityMatrix::qubit_count() const { return std::countr_zero(static_cast<std::size_t>(entries_.rows())); }

void DensityMatrix::validate(double tolerance) const {
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - Complex(1.0)) > tolerance) {
        throw std::invalid_argument("density matrix does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tolerance) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
}

DensityMatrix to_density_matrix(const StateVector &state) {
    auto amps = state.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> psi(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix &dm, std::span<const int> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace needs at least one kept qubit");
    }
    check_register(keep, dm.qubit_count());
    std::uint64_t kept_mask = 0;
    for (int q : keep) {
        kept_mask |= 1ULL << q;
    }
    const std::uint64_t dim = static_cast<std::uint64_t>(dm.dim());
    const std::uint64_t traced_mask = (dim - 1) & ~kept_mask;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(1 << keep.size(), 1 << keep.size());
    const auto &in = dm.entries();
    for (std::uint64_t r = 0; r < dim; r++) {
        for (std::uint64_t c = 0; c < dim; c++) {
            if (((r ^ c) & traced_mask) == 0) {
                out(static_cast<Eigen::Index>(extract_bits(r, keep)), static_cast<Eigen::Index>(extract_bits(c, keep))) +=
                    in(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return DensityMatrix(std::move(out));
}

}  // namespace qsum
