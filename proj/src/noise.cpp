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

#include "qsum/noise.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace qsum {

void NoiseModel::validate() const {
    auto in_unit = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_gate)) {
        throw std::invalid_argument("gate error probability must lie in [0, 1]");
    }
    if (!in_unit(p_readout)) {
        throw std::invalid_argument("readout error probability must lie in [0, 1]");
    }
}

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t shot) { return splitmix64(splitmix64(seed) + shot); }

namespace {

double unit(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> outcome_probabilities(const StateVector &state, std::span<const int> measured) {
    if (measured.empty()) {
        return state.probabilities();
    }
    return RegisterMeasurement(state, std::vector<int>(measured.begin(), measured.end())).probabilities();
}

}  // namespace

ShotHistogram run_noisy(const Circuit &circuit, const StateVector &initial, const NoiseModel &model,
                        std::int64_t shots, std::span<const int> measured) {
    model.validate();
    if (shots <= 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    if (circuit.qubit_count() > initial.qubit_count()) {
        throw std::invalid_argument("circuit is wider than the initial state");
    }
    const int width = measured.empty() ? initial.qubit_count() : static_cast<int>(measured.size());

    // Without gate errors every trajectory ends in the same state.
    std::vector<double> fixed_cdf;
    if (model.p_gate == 0.0) {
        StateVector state = initial;
        run_circuit(state, circuit);
        fixed_cdf = cumulative(outcome_probabilities(state, measured));
    }

    std::vector<std::uint64_t> tally(std::size_t{1} << width);
    for (std::int64_t s = 0; s < shots; s++) {
        const auto shot = static_cast<std::uint64_t>(s);
        std::mt19937_64 rng(trajectory_seed(model.seed, shot));
        std::size_t outcome;
        if (model.p_gate == 0.0) {
            outcome = sample_index(fixed_cdf, shot_uniform(model.seed, shot));
        } else {
            StateVector state = initial;
            for (const auto &op : circuit.ops()) {
                state.apply(op);
                for (int q : op.qubits()) {
                    if (unit(rng) < model.p_gate) {
                        state.apply_pauli(q, static_cast<Pauli>(rng() % 3));
                    }
                }
            }
            auto cdf = cumulative(outcome_probabilities(state, measured));
            outcome = sample_index(cdf, shot_uniform(model.seed, shot));
        }
        if (model.p_readout > 0.0) {
            for (int b = 0; b < width; b++) {
                if (unit(rng) < model.p_readout) {
                    outcome ^= std::size_t{1} << b;
                }
            }
        }
        tally[outcome]++;
    }

    std::map<std::string, std::uint64_t> counts;
    for (std::size_t k = 0; k < tally.size(); k++) {
        if (tally[k] != 0) {
            counts.emplace(to_bitstring(k, width), tally[k]);
        }
    }
    return ShotHistogram(width, static_cast<std::uint64_t>(shots), std::move(counts));
}

}  // namespace qsum
