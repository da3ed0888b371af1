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

#include "qsum/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qsum {

namespace {

void require_same_dim(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("density matrices differ in dimension (" + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix &rho_t, const DensityMatrix &rho_e) {
    require_same_dim(rho_t, rho_e);
    rho_t.validate(kMetricTolerance);
    rho_e.validate(kMetricTolerance);
    Eigen::MatrixXcd root = psd_sqrt(rho_t.entries());
    Eigen::MatrixXcd inner = root * rho_e.entries() * root;
    // Symmetrize so round-off does not leak into the eigensolver.
    inner = (0.5 * (inner + inner.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(inner, Eigen::EigenvaluesOnly);
    double f = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(f, 0.0, 1.0);
}

Deviations abs_deviations(const DensityMatrix &rho_t, const DensityMatrix &rho_e) {
    require_same_dim(rho_t, rho_e);
    Eigen::MatrixXd diff = (rho_t.entries() - rho_e.entries()).cwiseAbs();
    const double n = static_cast<double>(rho_t.dim());
    return {diff.sum() / (n * n), diff.maxCoeff()};
}

MetricReport compare(const DensityMatrix &rho_t, const DensityMatrix &rho_e) {
    auto dev = abs_deviations(rho_t, rho_e);
    return {fidelity(rho_t, rho_e), dev.average, dev.maximum};
}

double success_probability(const ShotHistogram &hist, const std::string &expected) {
    if (static_cast<int>(expected.size()) != hist.bit_width()) {
        throw std::invalid_argument("expected outcome '" + expected + "' does not match histogram width " +
                                    std::to_string(hist.bit_width()));
    }
    return static_cast<double>(hist.count(expected)) / static_cast<double>(hist.shots());
}

DensityMatrix parse_density_matrix(const std::string &json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("density matrix is not valid JSON: ") + e.what());
    }
    if (doc.is_object()) {
        if (!doc.contains("entries")) {
            throw std::invalid_argument("density matrix: missing field 'entries'");
        }
        doc = doc["entries"];
    }
    if (!doc.is_array() || doc.empty()) {
        throw std::invalid_argument("density matrix: 'entries' must be a non-empty list of [re, im] pairs");
    }
    const auto count = doc.size();
    const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
    if (dim * dim != count) {
        throw std::invalid_argument("density matrix: " + std::to_string(count) + " entries is not a square count");
    }
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < count; k++) {
        const auto &e = doc[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw std::invalid_argument("density matrix: entry " + std::to_string(k) + " is not an [re, im] pair");
        }
        m(static_cast<Eigen::Index>(k / dim), static_cast<Eigen::Index>(k % dim)) =
            Complex(e[0].get<double>(), e[1].get<double>());
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix load_density_matrix(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open density matrix file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_density_matrix(buf.str());
}

}  // namespace qsum
