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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "gtest/gtest.h"

using namespace qsum;
using namespace qsum::cli;
using nlohmann::ordered_json;

namespace {

const std::string kRoot = QSUM_SOURCE_DIR;

struct Golden {
    const char *file;
    std::uint64_t result;
};

const Golden kGolden[] = {
    {"three-party-bit", 1},  {"four-party-bit-even", 0}, {"four-party-bit-odd", 1},        {"three-party-two-bit", 3},
    {"three-party-three-bit", 6}, {"fifteen-party-bit", 0}, {"squares-two-bit", 1}, {"cubes-two-bit", 3},
};

std::string scenario_path(const std::string &name) { return kRoot + "/scenarios/" + name + ".json"; }

ordered_json without_timing(ordered_json doc) {
    doc.erase("elapsed_ms");
    return doc;
}

std::string field_message(const std::string &json_text) {
    try {
        parse_scenario(json_text);
    } catch (const InputError &e) {
        return e.what();
    }
    return "";
}

int exit_code_of(const std::string &args) {
    const std::string cmd = std::string(QSUM_TOOL) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Scenarios, golden_files_reproduce_the_sum) {
    for (const auto &g : kGolden) {
        auto outcome = run_scenario(load_scenario(scenario_path(g.file)));
        EXPECT_EQ(outcome.exit_code, kExitOk) << g.file;
        EXPECT_EQ(outcome.document["result"], g.result) << g.file;
        EXPECT_EQ(outcome.document["ancilla_outcome"], 0) << g.file;
        EXPECT_EQ(outcome.document["success_probability"], 1.0) << g.file;
        ASSERT_TRUE(outcome.histogram.has_value());
        EXPECT_EQ(outcome.histogram->counts().size(), 1u) << g.file;
    }
}

TEST(Scenarios, document_layout) {
    auto outcome = run_scenario(load_scenario(scenario_path("three-party-bit")));
    std::vector<std::string> keys;
    for (const auto &item : outcome.document.items()) {
        keys.push_back(item.key());
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"scenario", "parties", "qubits", "power", "oracle_mode", "shots", "seed",
                                              "noise_p", "result", "result_bits", "ancilla_outcome", "transmissions",
                                              "histogram", "success_probability", "transpile", "elapsed_ms"}));
    EXPECT_EQ(outcome.document["result_bits"], "1");
    EXPECT_EQ(outcome.document["oracle_mode"], "literal");
    EXPECT_FALSE(outcome.document["transpile"].is_null());
    EXPECT_EQ(outcome.document["transmissions"].size(), 3u);
    EXPECT_EQ(histogram_csv(*outcome.histogram), "outcome,count\n1,8192\n");
}

TEST(Scenarios, reruns_are_identical) {
    for (const auto &g : kGolden) {
        auto scenario = load_scenario(scenario_path(g.file));
        EXPECT_EQ(without_timing(run_scenario(scenario).document), without_timing(run_scenario(scenario).document));
    }
    auto noisy = load_scenario(scenario_path("three-party-bit"));
    Overrides o;
    o.noise_p = 0.05;
    o.shots = 500;
    auto a = run_scenario(noisy, o), b = run_scenario(noisy, o);
    EXPECT_EQ(a.histogram, b.histogram);
    EXPECT_EQ(without_timing(a.document), without_timing(b.document));
}

TEST(Scenarios, overrides_apply) {
    auto scenario = load_scenario(scenario_path("three-party-bit"));
    Overrides o;
    o.shots = 100;
    o.seed = 4;
    o.mode = OracleMode::Kickback;
    auto outcome = run_scenario(scenario, o);
    EXPECT_EQ(outcome.document["shots"], 100);
    EXPECT_EQ(outcome.document["seed"], 4);
    EXPECT_EQ(outcome.document["oracle_mode"], "kickback");
    EXPECT_EQ(outcome.document["result"], 1);
}

TEST(Scenarios, tampering_aborts_with_its_own_exit_code) {
    auto outcome = run_scenario(load_scenario(kRoot + "/tests/data/tamper.json"));
    EXPECT_EQ(outcome.exit_code, kExitAborted);
    EXPECT_EQ(outcome.document["result"], "aborted");
    EXPECT_EQ(outcome.document["ancilla_outcome"], 1);
    EXPECT_TRUE(outcome.document["histogram"].is_null());
}

TEST(Scenarios, input_errors_name_the_field) {
    EXPECT_THROW(load_scenario(kRoot + "/tests/data/two-parties.json"), InputError);
    EXPECT_NE(field_message(R"({"name":"x","parties":2,"qubits":1,"secrets":[0,1]})").find("'parties'"),
              std::string::npos);
    EXPECT_NE(field_message(R"({"name":"x","parties":3,"qubits":1,"secrets":[0,1]})").find("'secrets'"),
              std::string::npos);
    EXPECT_NE(field_message(R"({"name":"x","parties":3,"qubits":"one","secrets":[0,1,0]})").find("'qubits'"),
              std::string::npos);
    EXPECT_NE(field_message(R"({"name":"x","parties":3,"qubits":1,"secrets":[0,1,0],"shots":0})").find("'shots'"),
              std::string::npos);
    EXPECT_NE(field_message(R"({"name":"x","parties":3,"qubits":1,"secrets":[0,1,0],"noise_p":2})").find("'noise_p'"),
              std::string::npos);
    EXPECT_NE(field_message(R"({"name":"x","parties":3,"qubits":1,"secrets":[0,1,0],"behaviors":["honest","rogue","honest"]})")
                  .find("'behaviors"),
              std::string::npos);
    EXPECT_NE(field_message(R"({"name":"x","parties":3,"qubits":1,"secrets":[0,1,0],"oracle_mode":"fast"})")
                  .find("'oracle_mode'"),
              std::string::npos);
    EXPECT_NE(field_message(R"({"name":"x","parties":3,"qubits":1,"secrets":[0,1,0],"colour":1})").find("'colour'"),
              std::string::npos);
    EXPECT_NE(field_message(R"({"parties":3,"qubits":1,"secrets":[0,1,0]})").find("'name'"), std::string::npos);
    EXPECT_FALSE(field_message("[1, 2]").empty());
    EXPECT_FALSE(field_message("{").empty());
    EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), InputError);
}

TEST(Scenarios, secret_range_error_hides_the_value) {
    auto message = field_message(R"({"name":"x","parties":3,"qubits":2,"secrets":[0,9,0]})");
    EXPECT_NE(message.find("'secrets'"), std::string::npos);
    EXPECT_EQ(message.find('9'), std::string::npos) << message;
}

TEST(Sweep, bundled_configs_have_no_mismatches) {
    auto small = run_sweep(load_sweep(kRoot + "/sweeps/sweep-m3-n1.json"));
    EXPECT_EQ(small["rows"].size(), 8u);
    EXPECT_EQ(small["summary"]["runs"], 8);
    EXPECT_EQ(small["summary"]["mismatches"], 0);

    auto larger = run_sweep(load_sweep(kRoot + "/sweeps/sweep-m3-n2.json"));
    EXPECT_EQ(larger["rows"].size(), 64u);
    EXPECT_EQ(larger["summary"]["mismatches"], 0);
    for (const auto &row : larger["rows"]) {
        EXPECT_TRUE(row["match"].get<bool>());
        EXPECT_FALSE(row.contains("secrets"));
    }
}

TEST(Sweep, empty_range_and_guard) {
    auto empty = run_sweep(parse_sweep(R"({"parties": [], "qubits": 1})"));
    EXPECT_TRUE(empty["rows"].empty());
    EXPECT_EQ(empty["summary"]["runs"], 0);

    auto big = parse_sweep(R"({"parties": 10, "qubits": 2})");
    EXPECT_GT(sweep_size(big), kMaxSweepRuns);
    EXPECT_THROW(run_sweep(big), InputError);

    EXPECT_THROW(parse_sweep(R"({"parties": 2, "qubits": 1})"), InputError);
    EXPECT_THROW(parse_sweep(R"({"parties": 3})"), InputError);
    EXPECT_THROW(parse_sweep(R"({"parties": 3, "qubits": 1, "powers": [0]})"), InputError);
    EXPECT_THROW(parse_sweep(R"({"parties": 3, "qubits": 1, "extra": 0})"), InputError);
}

TEST(Sweep, tuple_indexing) {
    EXPECT_EQ(tuple_at(0, 3, 2), (std::vector<std::uint64_t>{0, 0, 0}));
    EXPECT_EQ(tuple_at(1, 3, 2), (std::vector<std::uint64_t>{0, 0, 1}));
    EXPECT_EQ(tuple_at(4, 3, 2), (std::vector<std::uint64_t>{1, 0, 0}));
    EXPECT_EQ(tuple_at(27, 3, 4), (std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(Documents, transpile_and_metrics) {
    auto doc = transpile_document("qubits 5\ncz q[1] q[0]\ncx q[0] q[3]\n", CouplingMap::ibmqx2());
    EXPECT_EQ(doc["violations_before"], 2);
    EXPECT_EQ(doc["violations_after"], 0);
    EXPECT_EQ(doc["equivalent"], true);
    EXPECT_EQ(doc["report"]["original_gate_count"], 2);
    EXPECT_THROW(transpile_document("qubits 2\nbogus q[0]\n", CouplingMap::ibmqx2()), InputError);
    EXPECT_THROW(transpile_document("qubits 4\ncx q[0] q[3]\n", CouplingMap(4, {{0, 1}, {2, 3}})), InputError);

    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2), mixed = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    zero(0, 0) = 1;
    auto m = metrics_document(DensityMatrix(zero), DensityMatrix(mixed));
    EXPECT_EQ(m["dim"], 2);
    EXPECT_NEAR(m["fidelity"].get<double>(), std::sqrt(0.5), 1e-9);
    EXPECT_NEAR(m["avg_abs_deviation"].get<double>(), 0.25, 1e-12);
    EXPECT_THROW(metrics_document(DensityMatrix(zero), DensityMatrix(Eigen::MatrixXcd::Identity(2, 2))), InputError);
}

TEST(Binary, exit_codes) {
    EXPECT_EQ(exit_code_of("run " + scenario_path("three-party-bit")), kExitOk);
    EXPECT_EQ(exit_code_of("run " + kRoot + "/tests/data/two-parties.json"), kExitInputError);
    EXPECT_EQ(exit_code_of("run " + kRoot + "/tests/data/tamper.json"), kExitAborted);
    EXPECT_EQ(exit_code_of("run /nonexistent.json"), kExitInputError);
    EXPECT_EQ(exit_code_of("--noise-p 3 run " + scenario_path("three-party-bit")), kExitInputError);
    EXPECT_EQ(exit_code_of("frobnicate"), kExitInputError);
    EXPECT_EQ(exit_code_of("sweep " + kRoot + "/sweeps/sweep-m3-n1.json"), kExitOk);
    EXPECT_EQ(exit_code_of("transpile /nonexistent.txt " + kRoot + "/maps/ibmqx2.json"), kExitInputError);
}

TEST(Binary, writes_output_and_histogram_files) {
    const std::string out = ::testing::TempDir() + "qsum_out.json";
    const std::string csv = ::testing::TempDir() + "qsum_hist.csv";
    ASSERT_EQ(exit_code_of("--out " + out + " run " + scenario_path("three-party-two-bit") + " --histogram " + csv), kExitOk);
    auto doc = ordered_json::parse(read_file(out));
    EXPECT_EQ(doc["result"], 3);
    EXPECT_EQ(read_file(csv), "outcome,count\n11,8192\n");
    std::remove(out.c_str());
    std::remove(csv.c_str());
}
