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
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsum/metrics.hpp"
#include "qsum/protocol.hpp"

namespace qsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitAborted = 2;

/// Upper bound on protocol runs a single sweep may enumerate.
inline constexpr std::uint64_t kMaxSweepRuns = 100000;

/// Malformed or invalid user input; maps to kExitInputError.
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string name;
    int parties = 0;
    int qubits = 0;
    std::vector<std::uint64_t> secrets;
    std::vector<PartyBehavior> behaviors;  // empty = all honest
    int power = 1;
    OracleMode mode = OracleMode::Kickback;
    std::int64_t shots = 8192;
    std::uint64_t seed = 0;
    double noise_p = 0.0;
    double readout_p = 0.0;
    /// Resolved relative to the scenario file's directory.
    std::optional<std::string> coupling_map;
};

/// Command-line values that take precedence over the scenario file.
struct Overrides {
    std::optional<std::int64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<double> noise_p;
    std::optional<OracleMode> mode;
};

/// Parses a JSON scenario. Unknown keys and wrongly typed fields raise
/// InputError naming the field. `base_dir` anchors a relative coupling_map path.
Scenario parse_scenario(const std::string &json_text, const std::string &base_dir = "");
Scenario load_scenario(const std::string &path);

struct RunOutcome {
    nlohmann::ordered_json document;
    int exit_code = kExitOk;
    std::optional<ShotHistogram> histogram;
};

/// Runs a scenario. The document holds the scenario name, result (or
/// "aborted"), ancilla outcome, histogram, success probability, transpile
/// report and elapsed time; it never contains party secrets.
RunOutcome run_scenario(const Scenario &scenario, const Overrides &overrides = {});

struct SweepConfig {
    std::vector<int> parties;
    std::vector<int> qubits;
    std::vector<int> powers{1};
    OracleMode mode = OracleMode::Kickback;
    std::int64_t shots = 64;
    std::uint64_t seed = 0;
};

/// Each of parties/qubits/powers may be an integer or a list of integers.
SweepConfig parse_sweep(const std::string &json_text);
SweepConfig load_sweep(const std::string &path);

/// Number of protocol runs a sweep would perform.
std::uint64_t sweep_size(const SweepConfig &config);

/// One row per (parties, qubits, power, tuple) in enumeration order, plus a
/// summary with the mismatch count against brute_force_power_sum. Rows name
/// tuples by index, not by their secrets. Throws InputError above kMaxSweepRuns.
nlohmann::ordered_json run_sweep(const SweepConfig &config, const Overrides &overrides = {});

/// Secret tuple number `index` for `parties` parties over `modulus`; party 1
/// is the most significant digit.
std::vector<std::uint64_t> tuple_at(std::uint64_t index, int parties, std::uint64_t modulus);

/// Transpiles a plain-text circuit; the document carries the rewritten
/// circuit text, the report, violation counts before and after, and (up to
/// kMaxMatrixQubits) whether the result is matrix-equivalent.
nlohmann::ordered_json transpile_document(const std::string &circuit_text, const CouplingMap &map);

/// Fidelity and deviations of two density matrices.
nlohmann::ordered_json metrics_document(const DensityMatrix &rho_t, const DensityMatrix &rho_e);

nlohmann::ordered_json report_to_json(const TranspileReport &report);

/// `outcome,count` lines with a header, in outcome order.
std::string histogram_csv(const ShotHistogram &hist);

std::string read_file(const std::string &path);

}  // namespace qsum::cli
