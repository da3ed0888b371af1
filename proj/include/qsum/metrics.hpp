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

#include <string>

#include "qsum/statevector.hpp"

namespace qsum {

/// Input tolerance for positivity when comparing noisy (measured) matrices.
inline constexpr double kMetricTolerance = 1e-7;

struct MetricReport {
    double fidelity = 0.0;
    double avg_abs_deviation = 0.0;
    double max_abs_deviation = 0.0;
};

/**
 * Root fidelity Tr sqrt(sqrt(rho_t) rho_e sqrt(rho_t)).
 *
 * Square roots come from Hermitian eigendecompositions with eigenvalues
 * clamped at zero; the result is clamped to [0, 1]. Both inputs must be
 * valid density matrices within kMetricTolerance.
 */
double fidelity(const DensityMatrix &rho_t, const DensityMatrix &rho_e);

struct Deviations {
    double average = 0.0;  // mean of |t_ij - e_ij| over all dim^2 entries
    double maximum = 0.0;
};

/// Element-wise complex-modulus deviations between two equal-sized matrices.
Deviations abs_deviations(const DensityMatrix &rho_t, const DensityMatrix &rho_e);

MetricReport compare(const DensityMatrix &rho_t, const DensityMatrix &rho_e);

/// counts[expected] / shots; zero when the outcome never occurred.
double success_probability(const ShotHistogram &hist, const std::string &expected);

/// Row-major list of [re, im] pairs, either bare or as {"entries": [...]}.
DensityMatrix parse_density_matrix(const std::string &json_text);
DensityMatrix load_density_matrix(const std::string &path);

}  // namespace qsum
