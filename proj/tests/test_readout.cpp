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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bhmelt/errors.hpp"
#include "bhmelt/readout.hpp"

using namespace bhmelt;

TEST_CASE("symmetric confusion swaps outcomes with equal probability") {
  ConfusionMatrix c = symmetric_confusion(0.9);
  validate_confusion(c);
  CHECK(c.F(0, 0) == doctest::Approx(0.9));
  CHECK(c.F(1, 0) == doctest::Approx(0.1));
  CHECK(c.F(0, 1) == doctest::Approx(0.1));
  CHECK(c.F(1, 1) == doctest::Approx(0.9));

  ConfusionMatrix perfect = symmetric_confusion(1.0);
  CHECK((perfect.F - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);

  CHECK_THROWS_AS(symmetric_confusion(0.0), ParameterError);
  CHECK_THROWS_AS(symmetric_confusion(1.1), ParameterError);
  CHECK_THROWS_AS(symmetric_confusion(-0.2), ParameterError);
}

TEST_CASE("validation rejects non-stochastic matrices") {
  ConfusionMatrix bad;
  bad.F = Eigen::MatrixXd::Identity(3, 2);
  CHECK_THROWS_AS(validate_confusion(bad), ParameterError);
  bad.F = Eigen::MatrixXd::Identity(1, 1);
  CHECK_THROWS_AS(validate_confusion(bad), ParameterError);
  bad.F.resize(2, 2);
  bad.F << 1.2, 0.0, -0.2, 1.0;
  CHECK_THROWS_AS(validate_confusion(bad), ParameterError);
  bad.F << 0.5, 0.2, 0.4, 0.8;
  CHECK_THROWS_AS(validate_confusion(bad), ParameterError);
}

TEST_CASE("joint confusion of independent readouts is the tensor product") {
  ConfusionMatrix a = symmetric_confusion(0.95);
  ConfusionMatrix b = symmetric_confusion(0.85);
  ConfusionMatrix joint = kron_confusion(a, b);
  validate_confusion(joint);
  REQUIRE(joint.F.rows() == 4);
  CHECK(joint.F(0, 0) == doctest::Approx(0.95 * 0.85));
  CHECK(joint.F(0, 3) == doctest::Approx(0.05 * 0.15));
  CHECK(joint.F(2, 1) == doctest::Approx(0.05 * 0.15));
  CHECK(joint.F(2, 3) == doctest::Approx(0.95 * 0.15));
  for (int c = 0; c < 4; ++c) {
    CHECK(joint.F.col(c).sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("calibration counts estimate the confusion column-wise") {
  std::vector<Eigen::VectorXd> counts(2);
  counts[0] = Eigen::Vector2d(90.0, 10.0);
  counts[1] = Eigen::Vector2d(20.0, 80.0);
  ConfusionMatrix est = estimate_confusion(counts);
  CHECK(est.F(0, 0) == doctest::Approx(0.9));
  CHECK(est.F(1, 0) == doctest::Approx(0.1));
  CHECK(est.F(0, 1) == doctest::Approx(0.2));
  CHECK(est.F(1, 1) == doctest::Approx(0.8));

  CHECK_THROWS_AS(estimate_confusion({Eigen::Vector2d(1.0, 0.0)}),
                  ParameterError);
  counts[1] = Eigen::Vector3d(1.0, 1.0, 1.0);
  CHECK_THROWS_AS(estimate_confusion(counts), ParameterError);
  counts[1] = Eigen::Vector2d(-1.0, 2.0);
  CHECK_THROWS_AS(estimate_confusion(counts), ParameterError);
  counts[1] = Eigen::Vector2d(0.0, 0.0);
  CHECK_THROWS_AS(estimate_confusion(counts), ParameterError);
}

TEST_CASE("device assignment fidelities are the characterized values") {
  Eigen::VectorXd f = device_readout_fidelities();
  REQUIRE(f.size() == 7);
  Eigen::VectorXd expected(7);
  expected << 0.91, 0.92, 0.93, 0.95, 0.87, 0.92, 0.83;
  CHECK((f - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("confusion correction inverts the forward map") {
  ConfusionMatrix joint =
      kron_confusion(symmetric_confusion(0.9), symmetric_confusion(0.8));
  Eigen::VectorXd p(4);
  p << 0.1, 0.4, 0.3, 0.2;
  Eigen::VectorXd measured = apply_confusion(joint, p);
  CHECK(measured.sum() == doctest::Approx(1.0));
  CorrectionResult result = correct_confusion(joint, measured);
  CHECK((result.raw - p).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((result.corrected - p).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(apply_confusion(joint, Eigen::Vector2d(0.5, 0.5)),
                  ParameterError);
  CHECK_THROWS_AS(correct_confusion(joint, Eigen::Vector2d(0.5, 0.5)),
                  ParameterError);
}

TEST_CASE("negative inverse weights are clamped and renormalized") {
  ConfusionMatrix c = symmetric_confusion(0.9);
  CorrectionResult result = correct_confusion(c, Eigen::Vector2d(1.0, 0.0));
  CHECK(result.raw[0] == doctest::Approx(1.125));
  CHECK(result.raw[1] == doctest::Approx(-0.125));
  CHECK(result.corrected[0] == doctest::Approx(1.0));
  CHECK(result.corrected[1] == doctest::Approx(0.0));

  CHECK_THROWS_AS(correct_confusion(symmetric_confusion(0.5),
                                    Eigen::Vector2d(0.5, 0.5)),
                  ConditioningError);
}

TEST_CASE("shot sampling is seeded, exhaustive, and unbiased") {
  Eigen::VectorXd p(3);
  p << 0.2, 0.5, 0.3;
  ShotRecord first = sample_shots(p, 5000, 77);
  ShotRecord again = sample_shots(p, 5000, 77);
  CHECK((first.counts - again.counts).cwiseAbs().maxCoeff() == 0);
  CHECK(first.counts.sum() == 5000);
  CHECK(first.n_shots == 5000);
  CHECK(first.seed == 77);

  ShotRecord other = sample_shots(p, 5000, 78);
  CHECK((first.counts - other.counts).cwiseAbs().maxCoeff() > 0);

  for (int k = 0; k < 3; ++k) {
    double freq = static_cast<double>(first.counts[k]) / 5000.0;
    double sigma = std::sqrt(p[k] * (1.0 - p[k]) / 5000.0);
    CHECK(std::abs(freq - p[k]) < 4.0 * sigma);
  }

  Eigen::VectorXd point = Eigen::VectorXd::Zero(4);
  point[2] = 1.0;
  ShotRecord deterministic = sample_shots(point, 100, 1);
  CHECK(deterministic.counts[2] == 100);

  CHECK_THROWS_AS(sample_shots(p, 0, 1), ParameterError);
  Eigen::VectorXd negative(2);
  negative << -0.5, 1.5;
  CHECK_THROWS_AS(sample_shots(negative, 10, 1), ParameterError);
  Eigen::VectorXd short_sum(2);
  short_sum << 0.3, 0.3;
  CHECK_THROWS_AS(sample_shots(short_sum, 10, 1), ParameterError);
}

TEST_CASE("site-wise correction recovers occupations without clamping") {
  std::vector<ConfusionMatrix> sites = {symmetric_confusion(0.9),
                                        symmetric_confusion(0.8)};
  Eigen::Vector2d measured(0.34, 0.56);
  Eigen::VectorXd occ = corrected_site_occupations(sites, measured);
  CHECK(occ[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(occ[1] == doctest::Approx(0.6).epsilon(1e-12));

  Eigen::VectorXd all_ground = corrected_site_occupations(
      sites, Eigen::Vector2d(0.0, 0.0));
  CHECK(all_ground[0] == doctest::Approx(-0.125));
  CHECK(all_ground[1] < 0.0);

  CHECK_THROWS_AS(corrected_site_occupations(sites, Eigen::Vector3d::Zero()),
                  ParameterError);
  CHECK_THROWS_AS(
      corrected_site_occupations(sites, Eigen::Vector2d(0.5, 1.5)),
      ParameterError);
}

TEST_CASE("repeat statistics use the sample standard error") {
  RepeatStatistics stats = repeat_statistics({0.0, 2.0});
  CHECK(stats.mean == doctest::Approx(1.0));
  CHECK(stats.sem == doctest::Approx(1.0));

  RepeatStatistics flat = repeat_statistics({1.0, 1.0, 1.0});
  CHECK(flat.mean == doctest::Approx(1.0));
  CHECK(flat.sem == doctest::Approx(0.0));

  CHECK_THROWS_AS(repeat_statistics({1.0}), ParameterError);
  CHECK_THROWS_AS(repeat_statistics({}), ParameterError);
}
