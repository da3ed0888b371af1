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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsum/gate.hpp"

namespace qsum {

using Complex = std::complex<double>;

/// Largest register the dense simulator accepts.
inline constexpr int kMaxQubits = 20;

/// Tolerance used for every normalization / hermiticity invariant.
inline constexpr double kTolerance = 1e-9;

enum class Pauli { X, Y, Z };

/**
 * Dense statevector over 2^q basis states.
 *
 * Qubit 0 is the least significant bit of the basis-state index, so basis
 * index 6 on three qubits is |110> with qubit 1 and qubit 2 set. All other
 * modules follow the same convention.
 */
class StateVector {
   public:
    /// Takes ownership of `amplitudes`; the length must be a power of two
    /// and the norm must be 1 within kTolerance.
    explicit StateVector(std::vector<Complex> amplitudes);

    /// |index> on `qubit_count` qubits. Throws std::out_of_range if index >= 2^qubit_count.
    static StateVector basis(int qubit_count, std::uint64_t index);

    int qubit_count() const { return qubit_count_; }
    std::size_t size() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex &operator[](std::size_t index) const { return amplitudes_[index]; }

    double norm_squared() const;
    std::vector<double> probabilities() const;

    /// In-place gate application. Validates the gate against qubit_count().
    void apply(const GateOp &gate);

    void apply_pauli(int qubit, Pauli pauli);

   private:
    void apply_single(int target, std::uint64_t control_mask, const Complex (&m)[2][2]);
    void apply_diagonal(int target, std::uint64_t control_mask, Complex phase);
    void apply_swap(int a, int b);

    int qubit_count_;
    std::vector<Complex> amplitudes_;
};

/// Functional form of StateVector::apply.
StateVector apply_gate(StateVector state, const GateOp &gate);

/// Bitstring for `value` over `width` bits, most significant bit first
/// (so qubit 0 is the rightmost character).
std::string to_bitstring(std::uint64_t value, int width);

/// Inverse of to_bitstring. Throws std::invalid_argument on non-binary characters.
std::uint64_t from_bitstring(const std::string &bits);

/// Outcome counts over a fixed number of measured bits.
class ShotHistogram {
   public:
    ShotHistogram(int bit_width, std::uint64_t shots, std::map<std::string, std::uint64_t> counts);

    int bit_width() const { return bit_width_; }
    std::uint64_t shots() const { return shots_; }
    const std::map<std::string, std::uint64_t> &counts() const { return counts_; }

    /// Zero when the outcome never occurred.
    std::uint64_t count(const std::string &bits) const;

    /// Most frequent outcome; ties go to the smallest value.
    std::uint64_t mode() const;

    bool operator==(const ShotHistogram &other) const = default;

   private:
    int bit_width_;
    std::uint64_t shots_;
    std::map<std::string, std::uint64_t> counts_;
};

/// Draws one uniform double in [0, 1) per shot.
///
/// Draw `shot` is the shot-th output of a SplitMix64 stream seeded with
/// `seed`, keeping the top 53 bits. Being counter based, any shot can be
/// reproduced in isolation, which is what lets trajectory simulation replay
/// exactly the outcomes of the noiseless sampler.
double shot_uniform(std::uint64_t seed, std::uint64_t shot);

/// One SplitMix64 mixing step; also used to derive per-shot sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Index of the outcome selected by `u` under `probabilities`. Outcomes
/// with probability exactly zero are never returned.
std::size_t sample_index(std::span<const double> cumulative, double u);

/// Running sum of `probabilities`.
std::vector<double> cumulative(std::span<const double> probabilities);

/// Samples every qubit `shots` times. Identical seeds give identical histograms.
ShotHistogram measure_all(const StateVector &state, std::int64_t shots, std::uint64_t seed);

/// Samples only `qubits`; qubits[0] is the least significant outcome bit.
ShotHistogram measure_qubits(const StateVector &state, std::span<const int> qubits, std::int64_t shots,
                             std::uint64_t seed);

/// Outcome distribution of a projective measurement on a sub-register.
class RegisterMeasurement {
   public:
    RegisterMeasurement(StateVector state, std::vector<int> qubits);

    const std::vector<int> &qubits() const { return qubits_; }

    /// probabilities()[v] is the chance of reading value v, where qubits()[0]
    /// is bit 0 of v.
    const std::vector<double> &probabilities() const { return probabilities_; }

    /// Post-measurement state for `outcome`, renormalized. Throws
    /// std::domain_error if the outcome has zero probability.
    StateVector collapse(std::uint64_t outcome) const;

   private:
    StateVector state_;
    std::vector<int> qubits_;
    std::vector<double> probabilities_;
};

/// Throws std::invalid_argument on duplicate indices, std::out_of_range on
/// indices outside the state.
RegisterMeasurement measure_register(const StateVector &state, std::vector<int> qubits);

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
   public:
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    int qubit_count() const;
    const Eigen::MatrixXcd &entries() const { return entries_; }
    Complex operator()(int row, int col) const { return entries_(row, col); }

    /// Throws std::invalid_argument if the matrix is not Hermitian, does not
    /// have unit trace, or has an eigenvalue below -tolerance.
    void validate(double tolerance = kTolerance) const;

   private:
    Eigen::MatrixXcd entries_;
};

DensityMatrix to_density_matrix(const StateVector &state);

/// Reduces to the qubits in `keep`; keep[i] becomes qubit i of the result.
DensityMatrix partial_trace(const DensityMatrix &dm, std::span<const int> keep);

}  // namespace qsum
