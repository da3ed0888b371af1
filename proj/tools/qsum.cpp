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

// Command-line front end: run, sweep, transpile, metrics.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qsum/cli.hpp"

namespace {

using qsum::cli::InputError;

void emit(const nlohmann::ordered_json &doc, const std::string &out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw InputError("cannot write '" + out_path + "'");
    }
    out << text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Secure multiparty quantum summation simulator"};
    app.require_subcommand(1);

    qsum::cli::Overrides overrides;
    std::string out_path;
    std::string oracle_mode;
    app.add_option("--shots", overrides.shots, "Override the shot count");
    app.add_option("--seed", overrides.seed, "Override the sampling seed");
    app.add_option("--noise-p", overrides.noise_p, "Override the per-gate Pauli error probability")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--oracle-mode", oracle_mode, "Override the oracle mode (literal or kickback)")
        ->check(CLI::IsMember({"literal", "kickback"}));
    app.add_option("--out", out_path, "Write the result document here instead of stdout");

    auto *run = app.add_subcommand("run", "Run a scenario file");
    std::string scenario_path;
    std::string histogram_path;
    run->add_option("scenario", scenario_path, "Scenario file")->required();
    run->add_option("--histogram", histogram_path, "Also write the histogram as CSV");

    auto *sweep = app.add_subcommand("sweep", "Run every secret tuple in a range");
    std::string sweep_path;
    sweep->add_option("config", sweep_path, "Sweep config file")->required();

    auto *transpile = app.add_subcommand("transpile", "Rewrite a circuit onto a coupling map");
    std::string circuit_path;
    std::string map_path;
    transpile->add_option("circuit", circuit_path, "Plain-text circuit")->required();
    transpile->add_option("map", map_path, "Coupling map file")->required();

    auto *metrics = app.add_subcommand("metrics", "Compare two density matrices");
    std::string rho_t_path;
    std::string rho_e_path;
    metrics->add_option("rho_t", rho_t_path, "Theoretical density matrix")->required();
    metrics->add_option("rho_e", rho_e_path, "Experimental density matrix")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : qsum::cli::kExitInputError;
    }
    if (!oracle_mode.empty()) {
        overrides.mode = qsum::parse_oracle_mode(oracle_mode);
    }

    try {
        if (*run) {
            auto outcome = qsum::cli::run_scenario(qsum::cli::load_scenario(scenario_path), overrides);
            emit(outcome.document, out_path);
            if (!histogram_path.empty() && outcome.histogram) {
                std::ofstream csv(histogram_path);
                if (!csv) {
                    throw InputError("cannot write '" + histogram_path + "'");
                }
                csv << qsum::cli::histogram_csv(*outcome.histogram);
            }
            return outcome.exit_code;
        }
        if (*sweep) {
            emit(qsum::cli::run_sweep(qsum::cli::load_sweep(sweep_path), overrides), out_path);
            return qsum::cli::kExitOk;
        }
        if (*transpile) {
            qsum::CouplingMap map = [&] {
                try {
                    return qsum::load_coupling_map(map_path);
                } catch (const std::exception &e) {
                    throw InputError(e.what());
                }
            }();
            emit(qsum::cli::transpile_document(qsum::cli::read_file(circuit_path), map), out_path);
            return qsum::cli::kExitOk;
        }
        if (*metrics) {
            auto load = [](const std::string &path) {
                try {
                    return qsum::load_density_matrix(path);
                } catch (const std::invalid_argument &e) {
                    throw InputError(e.what());
                }
            };
            emit(qsum::cli::metrics_document(load(rho_t_path), load(rho_e_path)), out_path);
            return qsum::cli::kExitOk;
        }
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return qsum::cli::kExitInputError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return qsum::cli::kExitInputError;
    }
    return qsum::cli::kExitInputError;
}
