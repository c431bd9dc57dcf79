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

#include "bhmelt/readout.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstddef>

#include "bhmelt/errors.hpp"
#include "bhmelt/rng.hpp"

namespace bhmelt {

void validate_confusion(const ConfusionMatrix& confusion) {
  const Eigen::MatrixXd& F = confusion.F;
  if (F.rows() < 2 || F.rows() != F.cols()) {
    throw ParameterError("confusion matrix must be square, dimension >= 2");
  }
  if ((F.array() < -1e-12).any() || (F.array() > 1.0 + 1e-12).any()) {
    throw ParameterError("confusion entries must be probabilities");
  }
  for (Eigen::Index c = 0; c < F.cols(); ++c) {
    if (std::abs(F.col(c).sum() - 1.0) > 1e-9) {
      throw ParameterError("confusion columns must sum to one");
    }
  }
}

ConfusionMatrix symmetric_confusion(double fidelity) {
  if (fidelity <= 0.0 || fidelity > 1.0) {
    throw ParameterError("assignment fidelity must be in (0, 1]");
  }
  ConfusionMatrix confusion;
  confusion.F.resize(2, 2);
  confusion.F << fidelity, 1.0 - fidelity, 1.0 - fidelity, fidelity;
  return confusion;
}

ConfusionMatrix kron_confusion(const ConfusionMatrix& a,
                               const ConfusionMatrix& b) {
  validate_confusion(a);
  validate_confusion(b);
  Eigen::Index da = a.F.rows();
  Eigen::Index db = b.F.rows();
  ConfusionMatrix joint;
  joint.F.resize(da * db, da * db);
  for (Eigen::Index ma = 0; ma < da; ++ma) {
    for (Eigen::Index mb = 0; mb < db; ++mb) {
      for (Eigen::Index ta = 0; ta < da; ++ta) {
        for (Eigen::Index tb = 0; tb < db; ++tb) {
          joint.F(ma * db + mb, ta * db + tb) = a.F(ma, ta) * b.F(mb, tb);
        }
      }
    }
  }
  return joint;
}

ConfusionMatrix estimate_confusion(
    const std::vector<Eigen::VectorXd>& calibration_counts) {
  Eigen::Index d = static_cast<Eigen::Index>(calibration_counts.size());
  if (d < 2) {
    throw ParameterError("need calibration data for at least two true states");
  }
  ConfusionMatrix confusion;
  confusion.F.resize(d, d);
  for (Eigen::Index t = 0; t < d; ++t) {
    const Eigen::VectorXd& counts = calibration_counts[static_cast<std::size_t>(t)];
    if (counts.size() != d) {
      throw ParameterError("calibration outcome count has wrong dimension");
    }
    if ((counts.array() < 0.0).any()) {
      throw ParameterError("calibration counts must be nonnegative");
    }
    double total = counts.sum();
    if (total <= 0.0) {
      throw ParameterError("calibration column has no shots");
    }
    confusion.F.col(t) = counts / total;
  }
  validate_confusion(confusion);
  return confusion;
}

Eigen::VectorXd device_readout_fidelities() {
  Eigen::VectorXd f(7);
  f << 0.91, 0.92, 0.93, 0.95, 0.87, 0.92, 0.83;
  return f;
}

Eigen::VectorXd apply_confusion(const ConfusionMatrix& confusion,
                                const Eigen::VectorXd& probabilities) {
  validate_confusion(confusion);
  if (probabilities.size() != confusion.F.cols()) {
    throw ParameterError("probability vector does not match confusion size");
  }
  return confusion.F * probabilities;
}

CorrectionResult correct_confusion(const ConfusionMatrix& confusion,
                                   const Eigen::VectorXd& measured) {
  validate_confusion(confusion);
  if (measured.size() != confusion.F.rows()) {
    throw ParameterError("measured vector does not match confusion size");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      confusion.F, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > 1e6) {
    throw ConditioningError("confusion matrix condition number exceeds 1e6");
  }
  CorrectionResult result;
  result.raw = svd.solve(measured);
  Eigen::VectorXd clamped = result.raw.cwiseMax(0.0);
  double total = clamped.sum();
  if (total <= 0.0) {
    throw ConditioningError("corrected distribution has no positive weight");
  }
  result.corrected = clamped / total;
  return result;
}

ShotRecord sample_shots(const Eigen::VectorXd& probabilities, int n_shots,
                        std::uint64_t seed) {
  if (n_shots < 1) throw ParameterError("need at least one shot");
  if (probabilities.size() < 1 || (probabilities.array() < -1e-12).any()) {
    throw ParameterError("outcome probabilities must be nonnegative");
  }
  double total = probabilities.sum();
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("outcome probabilities must sum to one");
  }

  ShotRecord record;
  record.n_shots = n_shots;
  record.seed = seed;
  record.counts = Eigen::VectorXi::Zero(probabilities.size());
  Rng rng(seed);
  for (int shot = 0; shot < n_shots; ++shot) {
    double u = rng.uniform() * total;
    double acc = 0.0;
    Eigen::Index outcome = probabilities.size() - 1;
    for (Eigen::Index k = 0; k < probabilities.size(); ++k) {
      acc += std::max(probabilities[k], 0.0);
      if (u < acc) {
        outcome = k;
        break;
      }
    }
    ++record.counts[outcome];
  }
  return record;
}

Eigen::VectorXd corrected_site_occupations(
    const std::vector<ConfusionMatrix>& site_confusions,
    const Eigen::VectorXd& measured_excited_fraction) {
  Eigen::Index L = measured_excited_fraction.size();
  if (static_cast<Eigen::Index>(site_confusions.size()) != L) {
    throw ParameterError("need one confusion matrix per site");
  }
  Eigen::VectorXd occupations(L);
  for (Eigen::Index i = 0; i < L; ++i) {
    double m1 = measured_excited_fraction[i];
    if (m1 < -1e-12 || m1 > 1.0 + 1e-12) {
      throw ParameterError("measured fraction outside [0, 1]");
    }
    Eigen::Vector2d measured(1.0 - m1, m1);
    occupations[i] = correct_confusion(site_confusions[static_cast<std::size_t>(i)],
                                       measured).raw[1];
  }
  return occupations;
}

RepeatStatistics repeat_statistics(const std::vector<double>& values) {
  std::size_t n = values.size();
  if (n < 2) throw ParameterError("need at least two repeats");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ssq = 0.0;
  for (double v : values) ssq += (v - mean) * (v - mean);
  double variance = ssq / static_cast<double>(n - 1);
  RepeatStatistics stats;
  stats.mean = mean;
  stats.sem = std::sqrt(variance / static_cast<double>(n));
  return stats;
}

}  // namespace bhmelt
