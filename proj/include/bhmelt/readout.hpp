// Copyright 2026 The bhmelt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BHMELT_READOUT_HPP
#define BHMELT_READOUT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace bhmelt {

// Column-stochastic readout confusion: entry (m, t) is the probability of
// measuring outcome m when the true outcome is t.
struct ConfusionMatrix {
  Eigen::MatrixXd F;
};

void validate_confusion(const ConfusionMatrix& confusion);

// 2x2 confusion with equal assignment fidelity for both outcomes.
ConfusionMatrix symmetric_confusion(double fidelity);

// Joint confusion of two independent readouts; outcome index m_a * d_b + m_b.
ConfusionMatrix kron_confusion(const ConfusionMatrix& a,
                               const ConfusionMatrix& b);

// Column-wise maximum-likelihood estimate from calibration shots:
// calibration_counts[t][m] counts outcome m with true state t prepared.
ConfusionMatrix estimate_confusion(
    const std::vector<Eigen::VectorXd>& calibration_counts);

// Ground/excited assignment fidelity per transmon of the seven-site device.
Eigen::VectorXd device_readout_fidelities();

Eigen::VectorXd apply_confusion(const ConfusionMatrix& confusion,
                                const Eigen::VectorXd& probabilities);

// Inverts the confusion map. `raw` keeps the unconstrained solution;
// `corrected` clamps negative weights and renormalizes. Condition numbers
// above 1e6 are rejected.
struct CorrectionResult {
  Eigen::VectorXd raw;
  Eigen::VectorXd corrected;
};

CorrectionResult correct_confusion(const ConfusionMatrix& confusion,
                                   const Eigen::VectorXd& measured);

// Finite-shot sampling of an outcome distribution (seeded, reproducible).
struct ShotRecord {
  int n_shots = 0;
  Eigen::VectorXi counts;
  std::uint64_t seed = 0;
};

ShotRecord sample_shots(const Eigen::VectorXd& probabilities, int n_shots,
                        std::uint64_t seed);

// Per-site binary readout emulation: occupied probability per site in,
// measured-excited frequency per site out, through each site's confusion.
Eigen::VectorXd corrected_site_occupations(
    const std::vector<ConfusionMatrix>& site_confusions,
    const Eigen::VectorXd& measured_excited_fraction);

// Mean and standard error over repeated estimates (sample variance, n >= 2).
struct RepeatStatistics {
  double mean = 0.0;
  double sem = 0.0;
};

RepeatStatistics repeat_statistics(const std::vector<double>& values);

}  // namespace bhmelt

#endif
