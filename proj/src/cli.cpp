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

#include "qsum/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace qsum::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

json parse_json(const std::string &text, const char *what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

[[noreturn]] void field_error(const std::string &field, const std::string &what) {
    throw InputError("field '" + field + "': " + what);
}

std::int64_t get_int(const json &doc, const std::string &field) {
    const auto &v = doc.at(field);
    if (!v.is_number_integer()) {
        field_error(field, "expected an integer");
    }
    return v.get<std::int64_t>();
}

std::uint64_t get_unsigned(const json &doc, const std::string &field) {
    std::int64_t v = get_int(doc, field);
    if (v < 0) {
        field_error(field, "must not be negative");
    }
    return static_cast<std::uint64_t>(v);
}

double get_probability(const json &doc, const std::string &field) {
    const auto &v = doc.at(field);
    if (!v.is_number()) {
        field_error(field, "expected a number");
    }
    double p = v.get<double>();
    if (!(p >= 0.0 && p <= 1.0)) {
        field_error(field, "must lie in [0, 1]");
    }
    return p;
}

std::string get_string(const json &doc, const std::string &field) {
    const auto &v = doc.at(field);
    if (!v.is_string()) {
        field_error(field, "expected a string");
    }
    return v.get<std::string>();
}

OracleMode get_mode(const json &doc, const std::string &field) {
    try {
        return parse_oracle_mode(get_string(doc, field));
    } catch (const std::invalid_argument &e) {
        field_error(field, e.what());
    }
}

std::vector<int> int_or_list(const json &doc, const std::string &field) {
    const auto &v = doc.at(field);
    if (v.is_number_integer()) {
        return {v.get<int>()};
    }
    if (!v.is_array()) {
        field_error(field, "expected an integer or a list of integers");
    }
    std::vector<int> out;
    for (const auto &e : v) {
        if (!e.is_number_integer()) {
            field_error(field, "expected an integer or a list of integers");
        }
        out.push_back(e.get<int>());
    }
    return out;
}

void reject_unknown(const json &doc, const std::set<std::string> &known) {
    for (const auto &[key, value] : doc.items()) {
        if (known.count(key) == 0) {
            throw InputError("unknown field '" + key + "'");
        }
    }
}

PartyBehavior parse_behavior(const json &v, std::size_t index) {
    const std::string field = "behaviors[" + std::to_string(index) + "]";
    if (v.is_string() && v.get<std::string>() == "honest") {
        return Honest{};
    }
    if (v.is_object() && v.size() == 1 && v.contains("bitflip") && v["bitflip"].is_number_integer() &&
        v["bitflip"].get<std::int64_t>() >= 0) {
        return TamperBitFlip{v["bitflip"].get<std::uint64_t>()};
    }
    field_error(field, "expected \"honest\" or {\"bitflip\": <mask>}");
}

}  // namespace

Scenario parse_scenario(const std::string &json_text, const std::string &base_dir) {
    const json doc = parse_json(json_text, "scenario");
    if (!doc.is_object()) {
        throw InputError("scenario must be a JSON object");
    }
    reject_unknown(doc, {"name", "parties", "qubits", "secrets", "behaviors", "power", "oracle_mode", "shots", "seed",
                         "noise_p", "readout_p", "coupling_map"});
    for (const char *required : {"name", "parties", "qubits", "secrets"}) {
        if (!doc.contains(required)) {
            field_error(required, "missing");
        }
    }
    Scenario s;
    s.name = get_string(doc, "name");
    s.parties = static_cast<int>(get_int(doc, "parties"));
    s.qubits = static_cast<int>(get_int(doc, "qubits"));
    if (!doc["secrets"].is_array()) {
        field_error("secrets", "expected a list of integers");
    }
    for (const auto &v : doc["secrets"]) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            field_error("secrets", "expected a list of non-negative integers");
        }
        s.secrets.push_back(v.get<std::uint64_t>());
    }
    if (doc.contains("behaviors")) {
        if (!doc["behaviors"].is_array()) {
            field_error("behaviors", "expected a list");
        }
        for (std::size_t i = 0; i < doc["behaviors"].size(); i++) {
            s.behaviors.push_back(parse_behavior(doc["behaviors"][i], i));
        }
    }
    if (doc.contains("power")) {
        s.power = static_cast<int>(get_int(doc, "power"));
    }
    if (doc.contains("oracle_mode")) {
        s.mode = get_mode(doc, "oracle_mode");
    }
    if (doc.contains("shots")) {
        s.shots = get_int(doc, "shots");
    }
    if (doc.contains("seed")) {
        s.seed = get_unsigned(doc, "seed");
    }
    if (doc.contains("noise_p")) {
        s.noise_p = get_probability(doc, "noise_p");
    }
    if (doc.contains("readout_p")) {
        s.readout_p = get_probability(doc, "readout_p");
    }
    if (doc.contains("coupling_map")) {
        std::filesystem::path p = get_string(doc, "coupling_map");
        if (p.is_relative() && !base_dir.empty()) {
            p = std::filesystem::path(base_dir) / p;
        }
        s.coupling_map = p.string();
    }

    if (s.parties <= 2) {
        field_error("parties", "the protocol needs more than two parties");
    }
    if (s.qubits < 1 || s.qubits > kMaxQubits) {
        field_error("qubits", "must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (s.secrets.size() != static_cast<std::size_t>(s.parties)) {
        field_error("secrets", "expected " + std::to_string(s.parties) + " entries, one per party");
    }
    for (std::uint64_t y : s.secrets) {
        if (y >= (1ULL << s.qubits)) {
            field_error("secrets", "every secret must be below 2^qubits");
        }
    }
    if (!s.behaviors.empty() && s.behaviors.size() != static_cast<std::size_t>(s.parties)) {
        field_error("behaviors", "expected " + std::to_string(s.parties) + " entries, one per party");
    }
    if (s.power < 1) {
        field_error("power", "must be at least 1");
    }
    if (s.shots <= 0) {
        field_error("shots", "must be positive");
    }
    return s;
}

Scenario load_scenario(const std::string &path) {
    return parse_scenario(read_file(path), std::filesystem::path(path).parent_path().string());
}

ordered_json report_to_json(const TranspileReport &report) {
    ordered_json rewrites = ordered_json::array();
    for (const auto &r : report.rewrites) {
        rewrites.push_back({{"rule", r.rule}, {"op_index", r.op_index}, {"qubits", r.qubits}});
    }
    ordered_json doc;
    doc["original_gate_count"] = report.original_gate_count;
    doc["rewritten_gate_count"] = report.rewritten_gate_count;
    doc["rewrites"] = std::move(rewrites);
    doc["layout"] = report.layout.empty() ? ordered_json(nullptr) : ordered_json(report.layout);
    return doc;
}

namespace {

ordered_json histogram_json(const ShotHistogram &hist) {
    ordered_json counts = ordered_json::object();
    for (const auto &[bits, n] : hist.counts()) {
        counts[bits] = n;
    }
    return counts;
}

ProtocolConfig make_config(int parties, int qubits, OracleMode mode, std::int64_t shots, std::uint64_t seed,
                           double noise_p, double readout_p, const Overrides &overrides) {
    ProtocolConfig config;
    config.parties = parties;
    config.qubits = qubits;
    config.mode = overrides.mode.value_or(mode);
    config.shots = overrides.shots.value_or(shots);
    config.seed = overrides.seed.value_or(seed);
    config.noise.p_gate = overrides.noise_p.value_or(noise_p);
    config.noise.p_readout = readout_p;
    try {
        config.validate();
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    return config;
}

}  // namespace

RunOutcome run_scenario(const Scenario &scenario, const Overrides &overrides) {
    const auto start = std::chrono::steady_clock::now();
    ProtocolConfig config = make_config(scenario.parties, scenario.qubits, scenario.mode, scenario.shots, scenario.seed,
                                        scenario.noise_p, scenario.readout_p, overrides);
    if (scenario.coupling_map) {
        try {
            config.coupling_map = load_coupling_map(*scenario.coupling_map);
        } catch (const std::exception &e) {
            throw InputError(std::string("coupling_map: ") + e.what());
        }
    }

    const auto secrets = make_secrets(scenario.secrets);
    ProtocolTranscript transcript;
    try {
        transcript = run_power_summation(config, secrets, scenario.power, scenario.behaviors);
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    } catch (const RoutingError &e) {
        throw InputError(e.what());
    }
    const std::uint64_t expected = brute_force_power_sum(scenario.secrets, config.modulus(), scenario.power);

    RunOutcome outcome;
    auto &doc = outcome.document;
    doc["scenario"] = scenario.name;
    doc["parties"] = config.parties;
    doc["qubits"] = config.qubits;
    doc["power"] = scenario.power;
    doc["oracle_mode"] = to_string(config.mode);
    doc["shots"] = config.shots;
    doc["seed"] = config.seed;
    doc["noise_p"] = config.noise.p_gate;
    if (transcript.aborted()) {
        doc["result"] = "aborted";
    } else {
        doc["result"] = *transcript.result;
        doc["result_bits"] = to_bitstring(*transcript.result, config.qubits);
    }
    doc["ancilla_outcome"] = transcript.ancilla_outcome;
    ordered_json log = ordered_json::array();
    for (const auto &t : transcript.transmissions) {
        log.push_back({{"from", t.sender}, {"to", t.receiver}, {"register", t.register_id}});
    }
    doc["transmissions"] = std::move(log);
    if (transcript.histogram) {
        doc["histogram"] = histogram_json(*transcript.histogram);
        doc["success_probability"] =
            success_probability(*transcript.histogram, to_bitstring(expected, config.qubits));
    } else {
        doc["histogram"] = nullptr;
        doc["success_probability"] = 0.0;
    }
    doc["transpile"] = transcript.transpile_report ? report_to_json(*transcript.transpile_report) : ordered_json(nullptr);
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    doc["elapsed_ms"] = elapsed.count();

    outcome.exit_code = transcript.aborted() ? kExitAborted : kExitOk;
    outcome.histogram = transcript.histogram;
    return outcome;
}

SweepConfig parse_sweep(const std::string &json_text) {
    const json doc = parse_json(json_text, "sweep config");
    if (!doc.is_object()) {
        throw InputError("sweep config must be a JSON object");
    }
    reject_unknown(doc, {"parties", "qubits", "powers", "oracle_mode", "shots", "seed"});
    for (const char *required : {"parties", "qubits"}) {
        if (!doc.contains(required)) {
            field_error(required, "missing");
        }
    }
    SweepConfig c;
    c.parties = int_or_list(doc, "parties");
    c.qubits = int_or_list(doc, "qubits");
    if (doc.contains("powers")) {
        c.powers = int_or_list(doc, "powers");
    }
    if (doc.contains("oracle_mode")) {
        c.mode = get_mode(doc, "oracle_mode");
    }
    if (doc.contains("shots")) {
        c.shots = get_int(doc, "shots");
    }
    if (doc.contains("seed")) {
        c.seed = get_unsigned(doc, "seed");
    }
    for (int m : c.parties) {
        if (m <= 2) {
            field_error("parties", "the protocol needs more than two parties");
        }
    }
    for (int n : c.qubits) {
        if (n < 1 || n > kMaxQubits / 2) {
            field_error("qubits", "must lie in [1, " + std::to_string(kMaxQubits / 2) + "]");
        }
    }
    for (int k : c.powers) {
        if (k < 1) {
            field_error("powers", "must be at least 1");
        }
    }
    return c;
}

SweepConfig load_sweep(const std::string &path) { return parse_sweep(read_file(path)); }

std::uint64_t sweep_size(const SweepConfig &config) {
    std::uint64_t total = 0;
    for (int m : config.parties) {
        for (int n : config.qubits) {
            // N^m, saturating once past the guard.
            std::uint64_t tuples = 1;
            for (int i = 0; i < m && tuples <= kMaxSweepRuns; i++) {
                tuples <<= n;
            }
            total += tuples * config.powers.size();
            if (total > kMaxSweepRuns) {
                return total;
            }
        }
    }
    return total;
}

std::vector<std::uint64_t> tuple_at(std::uint64_t index, int parties, std::uint64_t modulus) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(parties));
    for (int i = parties - 1; i >= 0; i--) {
        out[static_cast<std::size_t>(i)] = index % modulus;
        index /= modulus;
    }
    return out;
}

ordered_json run_sweep(const SweepConfig &config, const Overrides &overrides) {
    const std::uint64_t runs = sweep_size(config);
    if (runs > kMaxSweepRuns) {
        throw InputError("sweep would perform more than " + std::to_string(kMaxSweepRuns) + " runs");
    }
    ordered_json rows = ordered_json::array();
    std::uint64_t mismatches = 0;
    for (int m : config.parties) {
        for (int n : config.qubits) {
            for (int k : config.powers) {
                ProtocolConfig pc = make_config(m, n, config.mode, config.shots, config.seed, 0.0, 0.0, overrides);
                std::uint64_t tuples = 1;
                for (int i = 0; i < m; i++) {
                    tuples *= pc.modulus();
                }
                for (std::uint64_t t = 0; t < tuples; t++) {
                    auto values = tuple_at(t, m, pc.modulus());
                    auto transcript = run_power_summation(pc, make_secrets(values), k);
                    const std::uint64_t expected = brute_force_power_sum(values, pc.modulus(), k);
                    const bool match = transcript.result == expected &&
                                       transcript.histogram->count(to_bitstring(expected, n)) == transcript.histogram->shots();
                    mismatches += match ? 0 : 1;
                    ordered_json row;
                    row["parties"] = m;
                    row["qubits"] = n;
                    row["power"] = k;
                    row["tuple_index"] = t;
                    row["expected"] = expected;
                    row["result"] = transcript.result ? ordered_json(*transcript.result) : ordered_json("aborted");
                    row["match"] = match;
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    ordered_json doc;
    doc["rows"] = std::move(rows);
    doc["summary"] = {{"runs", runs}, {"mismatches", mismatches}};
    return doc;
}

ordered_json transpile_document(const std::string &circuit_text, const CouplingMap &map) {
    Circuit circuit(1);
    try {
        circuit = parse_circuit(circuit_text);
    } catch (const std::invalid_argument &e) {
        throw InputError(std::string("circuit: ") + e.what());
    }
    ordered_json doc;
    std::size_t before = 0;
    try {
        before = validate(circuit, map).size();
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    TranspileResult result{Circuit(1), {}};
    try {
        result = transpile(circuit, map);
    } catch (const RoutingError &e) {
        throw InputError(e.what());
    }
    doc["violations_before"] = before;
    doc["violations_after"] = validate(result.circuit, map).size();
    doc["report"] = report_to_json(result.report);
    if (result.circuit.qubit_count() <= kMaxMatrixQubits) {
        doc["equivalent"] = equal_up_to_global_phase(circuit_to_matrix(result.circuit),
                                                     circuit_to_matrix(circuit.widened(result.circuit.qubit_count())));
    } else {
        doc["equivalent"] = nullptr;
    }
    doc["circuit"] = to_text(result.circuit);
    return doc;
}

ordered_json metrics_document(const DensityMatrix &rho_t, const DensityMatrix &rho_e) {
    MetricReport report;
    try {
        report = compare(rho_t, rho_e);
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    ordered_json doc;
    doc["dim"] = rho_t.dim();
    doc["fidelity"] = report.fidelity;
    doc["avg_abs_deviation"] = report.avg_abs_deviation;
    doc["max_abs_deviation"] = report.max_abs_deviation;
    return doc;
}

std::string histogram_csv(const ShotHistogram &hist) {
    std::string out = "outcome,count\n";
    for (const auto &[bits, n] : hist.counts()) {
        out += bits + "," + std::to_string(n) + "\n";
    }
    return out;
}

}  // namespace qsum::cli
