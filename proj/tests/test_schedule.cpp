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

#include <json.hpp>

#include "bhmelt/errors.hpp"
#include "bhmelt/lattice.hpp"
#include "bhmelt/schedule.hpp"

using namespace bhmelt;

TEST_CASE("ramp shape hits its endpoints exactly and decays monotonically") {
  const double T = 3.7;
  const double tau = 0.4 * T;
  CHECK(exp_ramp_shape(0.0, T, tau) == 1.0);
  CHECK(exp_ramp_shape(T, T, tau) == 0.0);
  CHECK(exp_ramp_shape(0.5 * T, T, tau) == doctest::Approx(0.2227001).epsilon(1e-6));
  double prev = 1.0;
  for (int k = 1; k <= 16; ++k) {
    double s = exp_ramp_shape(T * k / 16.0, T, tau);
    CHECK(s < prev);
    prev = s;
  }
  CHECK_THROWS_AS(exp_ramp_shape(0.0, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(exp_ramp_shape(0.0, 1.0, 0.0), ParameterError);
}

TEST_CASE("melt schedule ramps the chosen stagger to exact degeneracy") {
  LatticeConfig config = device_lattice();
  for (auto stagger : {Stagger::Small, Stagger::Large}) {
    RampSchedule schedule = melt_schedule(config, 2.0, stagger);
    REQUIRE(schedule.segments.size() == 1);
    CHECK(schedule.segments[0].kind == SegmentKind::ExpRamp);
    CHECK(schedule.segments[0].tau == doctest::Approx(0.8));
    CHECK(schedule.total_duration() == doctest::Approx(2.0));
    CHECK(disorder_at(schedule, 0.0) == config.stagger(stagger));
    CHECK(disorder_at(schedule, 2.0).norm() == 0.0);
  }
  CHECK_THROWS_AS(melt_schedule(config, 0.0, Stagger::Small), ParameterError);
}

TEST_CASE("boomerang is an exact time mirror about its midpoint") {
  LatticeConfig config = device_lattice();
  const double T = 1.0;
  RampSchedule schedule = boomerang_schedule(config, T);
  REQUIRE(schedule.segments.size() == 2);
  CHECK(schedule.total_duration() == doctest::Approx(2.0 * T));
  for (double t : {0.0, 0.125, 0.25, 0.5, 0.75, 1.0}) {
    Eigen::VectorXd fwd = disorder_at(schedule, t);
    Eigen::VectorXd bwd = disorder_at(schedule, 2.0 * T - t);
    CHECK((fwd - bwd).norm() == 0.0);
  }
  for (double t : {0.3, 0.6180339887}) {
    Eigen::VectorXd fwd = disorder_at(schedule, t);
    Eigen::VectorXd bwd = disorder_at(schedule, 2.0 * T - t);
    CHECK((fwd - bwd).norm() < 1e-12 * fwd.norm() + 1e-15);
  }
  CHECK(disorder_at(schedule, T).norm() == 0.0);
  CHECK(disorder_at(schedule, 0.0) == config.delta_small);
  CHECK(disorder_at(schedule, 2.0 * T) == config.delta_small);
}

TEST_CASE("boomerang hold keeps the lattice degenerate in the middle") {
  LatticeConfig config = device_lattice();
  RampSchedule schedule = boomerang_schedule(config, 1.0, 0.5, Stagger::Large);
  REQUIRE(schedule.segments.size() == 3);
  CHECK(schedule.segments[1].kind == SegmentKind::Hold);
  CHECK(schedule.total_duration() == doctest::Approx(2.5));
  CHECK(disorder_at(schedule, 1.2).norm() == 0.0);
  CHECK(disorder_at(schedule, 0.0) == config.delta_large);
  CHECK(disorder_at(schedule, 2.5) == config.delta_large);
  CHECK_THROWS_AS(boomerang_schedule(config, 1.0, -0.1), ParameterError);
}

TEST_CASE("jumps take effect at their own time") {
  Eigen::VectorXd p0 = Eigen::VectorXd::Constant(3, 1.0);
  Eigen::VectorXd p1 = Eigen::VectorXd::Constant(3, 5.0);

  Segment lead_jump{SegmentKind::Jump, 0.0, p1, p0, 0.0};
  Segment hold{SegmentKind::Hold, 1.0, p0, p0, 0.0};
  RampSchedule starts_with_jump{{lead_jump, hold}};
  validate_schedule(starts_with_jump);
  CHECK(disorder_at(starts_with_jump, 0.0) == p0);

  Segment tail_jump{SegmentKind::Jump, 0.0, p0, p1, 0.0};
  RampSchedule ends_with_jump{{hold, tail_jump}};
  validate_schedule(ends_with_jump);
  CHECK(disorder_at(ends_with_jump, 0.5) == p0);
  CHECK(disorder_at(ends_with_jump, 1.0) == p1);

  CHECK_THROWS_AS(disorder_at(ends_with_jump, -0.1), ParameterError);
  CHECK_THROWS_AS(disorder_at(ends_with_jump, 1.1), ParameterError);
  CHECK_THROWS_AS(disorder_at(RampSchedule{}, 0.0), ParameterError);
}

TEST_CASE("validation rejects malformed schedules") {
  Eigen::VectorXd p3 = Eigen::VectorXd::Constant(3, 1.0);
  Eigen::VectorXd p4 = Eigen::VectorXd::Constant(4, 1.0);
  Eigen::VectorXd z3 = Eigen::VectorXd::Zero(3);

  CHECK_THROWS_AS(validate_schedule(RampSchedule{}), ParameterError);
  CHECK_THROWS_AS(
      validate_schedule(RampSchedule{{{SegmentKind::Hold, 1.0, p3, p4, 0.0}}}),
      ParameterError);
  CHECK_THROWS_AS(
      validate_schedule(RampSchedule{{{SegmentKind::Hold, -1.0, p3, p3, 0.0}}}),
      ParameterError);
  CHECK_THROWS_AS(
      validate_schedule(RampSchedule{{{SegmentKind::Jump, 0.5, p3, p3, 0.0}}}),
      ParameterError);
  CHECK_THROWS_AS(
      validate_schedule(RampSchedule{{{SegmentKind::ExpRamp, 1.0, p3, z3, 0.0}}}),
      ParameterError);
  CHECK_THROWS_AS(
      validate_schedule(RampSchedule{{{SegmentKind::Hold, 1.0, p3, z3, 0.0}}}),
      ParameterError);

  // Discontinuity between back-to-back holds needs an intervening jump.
  Segment hold_a{SegmentKind::Hold, 1.0, p3, p3, 0.0};
  Segment hold_b{SegmentKind::Hold, 1.0, z3, z3, 0.0};
  CHECK_THROWS_AS(validate_schedule(RampSchedule{{hold_a, hold_b}}),
                  ParameterError);
  Segment jump{SegmentKind::Jump, 0.0, p3, z3, 0.0};
  validate_schedule(RampSchedule{{hold_a, jump, hold_b}});
}

TEST_CASE("schedules survive a JSON round trip") {
  LatticeConfig config = device_lattice();
  RampSchedule schedule = boomerang_schedule(config, 1.7, 0.3, Stagger::Large);
  nlohmann::json j = schedule;
  RampSchedule back = j.get<RampSchedule>();
  REQUIRE(back.segments.size() == schedule.segments.size());
  for (std::size_t k = 0; k < schedule.segments.size(); ++k) {
    CHECK(back.segments[k].kind == schedule.segments[k].kind);
    CHECK(back.segments[k].duration == schedule.segments[k].duration);
    CHECK(back.segments[k].tau == schedule.segments[k].tau);
    CHECK(back.segments[k].start_profile == schedule.segments[k].start_profile);
    CHECK(back.segments[k].end_profile == schedule.segments[k].end_profile);
  }
  RampSchedule reparsed = nlohmann::json::parse(j.dump()).get<RampSchedule>();
  CHECK(reparsed.segments.back().end_profile == schedule.segments.back().end_profile);

  nlohmann::json bad = j;
  bad["segments"][0]["kind"] = "banana";
  CHECK_THROWS_AS(bad.get<RampSchedule>(), ConfigError);
}
