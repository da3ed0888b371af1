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

#include <cstdint>
#include <span>

#include "qsum/circuit.hpp"
#include "qsum/statevector.hpp"

namespace qsum {

/// Stochastic Pauli noise for trajectory simulation.
struct NoiseModel {
    /// Chance of a uniformly random X, Y or Z on each qubit a gate touches.
    double p_gate = 0.0;
    /// Chance of flipping each classical readout bit.
    double p_readout = 0.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument if a probability is outside [0, 1].
    void validate() const;
};

/// Sub-seed for shot `shot`'s error stream: splitmix64(splitmix64(seed) + shot).
std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t shot);

/**
 * Monte-Carlo trajectories: every shot re-runs `circuit` from `initial`,
 * inserting errors from its own mt19937_64 stream seeded by
 * trajectory_seed(). The outcome of shot s is drawn with shot_uniform(seed, s),
 * the same draw measure_all uses, so a model with both probabilities at zero
 * reproduces measure_all / measure_qubits bit for bit.
 *
 * `measured` selects the qubits to read (measured[0] is the least
 * significant outcome bit); empty means all qubits.
 */
ShotHistogram run_noisy(const Circuit &circuit, const StateVector &initial, const NoiseModel &model,
                        std::int64_t shots, std::span<const int> measured = {});

}  // namespace qsum
