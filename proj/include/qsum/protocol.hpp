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
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qsum/circuit.hpp"
#include "qsum/noise.hpp"
#include "qsum/statevector.hpp"
#include "qsum/transpile.hpp"

namespace qsum {

struct ProtocolConfig {
    int parties = 3;
    int qubits = 1;
    OracleMode mode = OracleMode::Kickback;
    std::int64_t shots = 8192;
    std::uint64_t seed = 0;
    /// Error probabilities; the seed inside is ignored in favour of `seed`.
    NoiseModel noise;
    /// When set, both protocol circuits are transpiled onto this map first.
    std::optional<CouplingMap> coupling_map;

    std::uint64_t modulus() const { return 1ULL << qubits; }

    /// Qubits the protocol allocates: home and transmitted registers, plus
    /// one secret register per non-initiating party in literal mode.
    int allocated_qubits() const;

    /// Throws std::invalid_argument when parties <= 2, qubits < 1, shots <= 0
    /// or the literal-mode register budget exceeds kMaxQubits.
    void validate() const;
};

struct PartySecret {
    int party;  // 1-based
    std::uint64_t value;
};

/// Secrets for parties 1..values.size() in order.
std::vector<PartySecret> make_secrets(std::span<const std::uint64_t> values);

struct Honest {
    bool operator==(const Honest &) const = default;
};

/// XORs `mask` into the transmitted register before forwarding it.
struct TamperBitFlip {
    std::uint64_t mask;
    bool operator==(const TamperBitFlip &) const = default;
};

using PartyBehavior = std::variant<Honest, TamperBitFlip>;

struct Transmission {
    int sender;
    int receiver;
    std::string register_id;

    bool operator==(const Transmission &) const = default;
};

/// Record of one run. Holds no party secrets.
struct ProtocolTranscript {
    std::vector<Transmission> transmissions;
    /// Value read from the transmitted register by the initiator's check.
    std::uint64_t ancilla_outcome = 0;
    /// Home-register readout; absent when the run aborted.
    std::optional<ShotHistogram> histogram;
    /// Declared sum; absent when the run aborted.
    std::optional<std::uint64_t> result;
    std::optional<TranspileReport> transpile_report;

    bool aborted() const { return !result.has_value(); }
};

/// The two halves of a run, split where the initiator measures the ancilla.
struct ProtocolCircuits {
    /// Secret preparation, QFT, entangling, party turns, and the final check.
    Circuit exchange;
    /// Inverse QFT on the home register.
    Circuit readout;
    std::vector<int> home;
    std::vector<int> transmitted;
    std::vector<Transmission> transmissions;
};

ProtocolCircuits build_protocol_circuits(const ProtocolConfig &config, std::span<const PartySecret> secrets,
                                         std::span<const PartyBehavior> behaviors = {});

/**
 * Runs the m-party summation end to end.
 *
 * The initiator prepares |y_1> on the home register, applies the QFT and
 * copies it onto the transmitted register; each later party applies its
 * behaviour and oracle and forwards the register; the last party returns it
 * to the initiator, who re-applies the CNOT check and reads the transmitted
 * register. A nonzero reading aborts the run without touching the home
 * register; otherwise the inverse QFT is applied and the home register is
 * sampled `shots` times.
 *
 * An empty `behaviors` means every party is honest.
 */
ProtocolTranscript run_summation(const ProtocolConfig &config, std::span<const PartySecret> secrets,
                                 std::span<const PartyBehavior> behaviors = {});

/// Each party raises its secret to `power` mod N locally, then run_summation.
ProtocolTranscript run_power_summation(const ProtocolConfig &config, std::span<const PartySecret> secrets,
                                       int power, std::span<const PartyBehavior> behaviors = {});

/// run_summation for behaviour lists with at least one nonzero flip mask.
ProtocolTranscript detect_tamper(const ProtocolConfig &config, std::span<const PartySecret> secrets,
                                 std::span<const PartyBehavior> behaviors);

/// Classical reference: (sum of y^power) mod modulus.
std::uint64_t brute_force_power_sum(std::span<const std::uint64_t> secrets, std::uint64_t modulus, int power);

}  // namespace qsum
