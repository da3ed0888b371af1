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

#include "qsum/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qsum {

int ProtocolConfig::allocated_qubits() const {
    return mode == OracleMode::Literal ? (parties + 1) * qubits : 2 * qubits;
}

void ProtocolConfig::validate() const {
    if (parties <= 2) {
        throw std::invalid_argument("the protocol needs more than two parties, got " + std::to_string(parties));
    }
    if (qubits < 1) {
        throw std::invalid_argument("secret register needs at least one qubit");
    }
    if (shots <= 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    // Literal mode keeps every party's secret register alive at once.
    const long budget = mode == OracleMode::Literal ? static_cast<long>(parties) * qubits + 2L * qubits : 2L * qubits;
    if (budget > kMaxQubits) {
        throw std::invalid_argument(std::string(to_string(mode)) + " mode needs " + std::to_string(budget) +
                                    " qubits, above the simulator capacity of " + std::to_string(kMaxQubits));
    }
    NoiseModel probe = noise;
    probe.validate();
}

std::vector<PartySecret> make_secrets(std::span<const std::uint64_t> values) {
    std::vector<PartySecret> out;
    for (std::size_t i = 0; i < values.size(); i++) {
        out.push_back({static_cast<int>(i) + 1, values[i]});
    }
    return out;
}

namespace {

// Secrets ordered by party index, checked for completeness and range.
// Messages never carry secret values.
std::vector<std::uint64_t> ordered_secrets(const ProtocolConfig &config, std::span<const PartySecret> secrets) {
    if (secrets.size() != static_cast<std::size_t>(config.parties)) {
        throw std::invalid_argument("expected " + std::to_string(config.parties) + " secrets, got " +
                                    std::to_string(secrets.size()));
    }
    std::vector<std::optional<std::uint64_t>> slots(static_cast<std::size_t>(config.parties));
    for (const auto &s : secrets) {
        if (s.party < 1 || s.party > config.parties) {
            throw std::invalid_argument("secret assigned to unknown party " + std::to_string(s.party));
        }
        auto &slot = slots[static_cast<std::size_t>(s.party - 1)];
        if (slot) {
            throw std::invalid_argument("party " + std::to_string(s.party) + " has more than one secret");
        }
        if (s.value >= config.modulus()) {
            throw std::invalid_argument("secret of party " + std::to_string(s.party) + " is outside [0, " +
                                        std::to_string(config.modulus()) + ")");
        }
        slot = s.value;
    }
    std::vector<std::uint64_t> out;
    for (const auto &slot : slots) {
        out.push_back(*slot);
    }
    return out;
}

std::vector<PartyBehavior> resolve_behaviors(const ProtocolConfig &config, std::span<const PartyBehavior> behaviors) {
    if (behaviors.empty()) {
        return std::vector<PartyBehavior>(static_cast<std::size_t>(config.parties), Honest{});
    }
    if (behaviors.size() != static_cast<std::size_t>(config.parties)) {
        throw std::invalid_argument("expected " + std::to_string(config.parties) + " behaviours, got " +
                                    std::to_string(behaviors.size()));
    }
    for (std::size_t i = 0; i < behaviors.size(); i++) {
        if (const auto *flip = std::get_if<TamperBitFlip>(&behaviors[i]); flip && flip->mask >= config.modulus()) {
            throw std::invalid_argument("flip mask of party " + std::to_string(i + 1) + " is wider than the register");
        }
    }
    return {behaviors.begin(), behaviors.end()};
}

std::vector<int> span_of(int first, int count) {
    std::vector<int> out(static_cast<std::size_t>(count));
    std::iota(out.begin(), out.end(), first);
    return out;
}

void prepare_basis(Circuit &c, std::span<const int> reg, std::uint64_t value) {
    for (std::size_t b = 0; b < reg.size(); b++) {
        if ((value >> b) & 1ULL) {
            c.append(GateOp::x(reg[b]));
        }
    }
}

void apply_behavior(Circuit &c, std::span<const int> transmitted, const PartyBehavior &behavior) {
    if (const auto *flip = std::get_if<TamperBitFlip>(&behavior)) {
        prepare_basis(c, transmitted, flip->mask);
    }
}

std::uint64_t mod_pow(std::uint64_t base, int exponent, std::uint64_t modulus) {
    std::uint64_t result = 1 % modulus;
    base %= modulus;
    auto e = static_cast<unsigned>(exponent);
    while (e != 0) {
        if (e & 1U) {
            result = result * base % modulus;
        }
        base = base * base % modulus;
        e >>= 1U;
    }
    return result;
}

}  // namespace

ProtocolCircuits build_protocol_circuits(const ProtocolConfig &config, std::span<const PartySecret> secrets,
                                         std::span<const PartyBehavior> behaviors) {
    config.validate();
    const auto values = ordered_secrets(config, secrets);
    const auto roles = resolve_behaviors(config, behaviors);
    const int n = config.qubits;
    const int m = config.parties;

    ProtocolCircuits out{Circuit(config.allocated_qubits()), Circuit(config.allocated_qubits()), span_of(0, n),
                         span_of(n, n), {}};
    Circuit &c = out.exchange;
    c.add_register("h", out.home);
    c.add_register("t", out.transmitted);

    // Initiator: |y_1>_h, QFT, copy onto t.
    prepare_basis(c, out.home, values[0]);
    c.append(qft(out.home));
    c.append(entangle_registers(out.home, out.transmitted));
    apply_behavior(c, out.transmitted, roles[0]);
    out.transmissions.push_back({1, 2, "t"});

    for (int party = 2; party <= m; party++) {
        const auto idx = static_cast<std::size_t>(party - 1);
        apply_behavior(c, out.transmitted, roles[idx]);
        if (config.mode == OracleMode::Literal) {
            auto scratch = span_of(2 * n + (party - 2) * n, n);
            c.add_register("p" + std::to_string(party), scratch);
            prepare_basis(c, scratch, values[idx]);
            c.append(oracle_circuit(values[idx], out.transmitted, OracleMode::Literal, scratch));
        } else {
            c.append(oracle_circuit(values[idx], out.transmitted, OracleMode::Kickback));
        }
        out.transmissions.push_back({party, party == m ? 1 : party + 1, "t"});
    }

    // Check: undo the copy; an untampered register returns to |0...0>.
    c.append(entangle_registers(out.home, out.transmitted));

    out.readout.add_register("h", out.home);
    out.readout.append(iqft(out.home));
    return out;
}

ProtocolTranscript run_summation(const ProtocolConfig &config, std::span<const PartySecret> secrets,
                                 std::span<const PartyBehavior> behaviors) {
    auto circuits = build_protocol_circuits(config, secrets, behaviors);

    ProtocolTranscript transcript;
    transcript.transmissions = circuits.transmissions;

    if (config.coupling_map) {
        auto exchange = transpile(circuits.exchange, *config.coupling_map);
        auto readout = transpile(circuits.readout, *config.coupling_map);
        TranspileReport report = exchange.report;
        report.original_gate_count += readout.report.original_gate_count;
        report.rewritten_gate_count += readout.report.rewritten_gate_count;
        for (auto r : readout.report.rewrites) {
            r.op_index += exchange.report.original_gate_count;
            report.rewrites.push_back(std::move(r));
        }
        transcript.transpile_report = std::move(report);
        circuits.exchange = std::move(exchange.circuit);
        circuits.readout = std::move(readout.circuit);
    }

    const int width = std::max(circuits.exchange.qubit_count(), circuits.readout.qubit_count());
    const StateVector initial = StateVector::basis(width, 0);
    const bool noiseless = config.noise.p_gate == 0.0 && config.noise.p_readout == 0.0;

    if (noiseless) {
        StateVector state = initial;
        run_circuit(state, circuits.exchange);
        RegisterMeasurement check(state, circuits.transmitted);
        auto cdf = cumulative(check.probabilities());
        transcript.ancilla_outcome = sample_index(cdf, shot_uniform(splitmix64(config.seed), 0));
        if (transcript.ancilla_outcome != 0) {
            return transcript;
        }
        state = check.collapse(0);
        run_circuit(state, circuits.readout);
        transcript.histogram = measure_qubits(state, circuits.home, config.shots, config.seed);
        transcript.result = transcript.histogram->mode();
        return transcript;
    }

    // Under noise the ancilla is read at the end of each trajectory (it
    // commutes with the readout circuit) and both registers are sampled jointly.
    Circuit full(width);
    full.append(circuits.exchange);
    full.append(circuits.readout);
    NoiseModel model = config.noise;
    model.seed = config.seed;
    std::vector<int> measured = circuits.transmitted;
    measured.insert(measured.end(), circuits.home.begin(), circuits.home.end());
    const auto joint = run_noisy(full, initial, model, config.shots, measured);

    const auto n = static_cast<std::size_t>(config.qubits);
    std::map<std::string, std::uint64_t> ancilla_counts;
    std::map<std::string, std::uint64_t> home_counts;
    for (const auto &[bits, count] : joint.counts()) {
        // Bitstrings are most significant first: home bits lead, ancilla bits trail.
        home_counts[bits.substr(0, n)] += count;
        ancilla_counts[bits.substr(n)] += count;
    }
    transcript.ancilla_outcome = ShotHistogram(config.qubits, joint.shots(), ancilla_counts).mode();
    if (transcript.ancilla_outcome != 0) {
        return transcript;
    }
    transcript.histogram = ShotHistogram(config.qubits, joint.shots(), std::move(home_counts));
    transcript.result = transcript.histogram->mode();
    return transcript;
}

ProtocolTranscript run_power_summation(const ProtocolConfig &config, std::span<const PartySecret> secrets, int power,
                                       std::span<const PartyBehavior> behaviors) {
    if (power < 1) {
        throw std::invalid_argument("power must be at least 1");
    }
    config.validate();
    std::vector<PartySecret> raised(secrets.begin(), secrets.end());
    for (auto &s : raised) {
        if (s.value >= config.modulus()) {
            throw std::invalid_argument("secret of party " + std::to_string(s.party) + " is outside [0, " +
                                        std::to_string(config.modulus()) + ")");
        }
        s.value = mod_pow(s.value, power, config.modulus());
    }
    return run_summation(config, raised, behaviors);
}

ProtocolTranscript detect_tamper(const ProtocolConfig &config, std::span<const PartySecret> secrets,
                                 std::span<const PartyBehavior> behaviors) {
    bool any = std::any_of(behaviors.begin(), behaviors.end(), [](const PartyBehavior &b) {
        const auto *flip = std::get_if<TamperBitFlip>(&b);
        return flip != nullptr && flip->mask != 0;
    });
    if (!any) {
        throw std::invalid_argument("detect_tamper needs at least one party with a nonzero flip mask");
    }
    return run_summation(config, secrets, behaviors);
}

std::uint64_t brute_force_power_sum(std::span<const std::uint64_t> secrets, std::uint64_t modulus, int power) {
    if (modulus == 0) {
        throw std::invalid_argument("modulus must be positive");
    }
    if (power < 1) {
        throw std::invalid_argument("power must be at least 1");
    }
    std::uint64_t total = 0;
    for (std::uint64_t y : secrets) {
        if (y >= modulus) {
            throw std::invalid_argument("secret outside [0, modulus)");
        }
        std::uint64_t term = 1;
        for (int i = 0; i < power; i++) {
            term = term * y % modulus;
        }
        total = (total + term) % modulus;
    }
    return total;
}

}  // namespace qsum
