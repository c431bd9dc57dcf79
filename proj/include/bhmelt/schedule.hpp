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

#ifndef BHMELT_SCHEDULE_HPP
#define BHMELT_SCHEDULE_HPP

#include <Eigen/Dense>
#include <json.hpp>
#include <vector>

#include "bhmelt/lattice.hpp"

namespace bhmelt {

// Time-dependent site-energy profile delta_i(t): exponential melt ramps,
// exact time-mirrored reverse ramps, holds, and instantaneous jumps.
enum class SegmentKind { Jump, Hold, ExpRamp, ExpRampReverse };

struct Segment {
  SegmentKind kind = SegmentKind::Hold;
  double duration = 0.0;          // us; jumps have duration 0
  Eigen::VectorXd start_profile;  // rad/us
  Eigen::VectorXd end_profile;    // rad/us
  double tau = 0.0;               // us; ramps only
};

struct RampSchedule {
  std::vector<Segment> segments;
  double total_duration() const;
};

// Decaying ramp shape s(t) = (e^{-t/tau} - e^{-T/tau}) / (1 - e^{-T/tau}),
// shifted and rescaled so s(0) = 1 and s(T) = 0 exactly. The raw exponential
// alone would leave a residual e^{-T/tau} of the disorder at the end of the
// ramp; the shift makes the lattice reach exact degeneracy.
double exp_ramp_shape(double t, double duration, double tau);

// Profile within one segment at local time measured from the segment start.
// Reverse ramps evaluate the same shape at duration - t_local, so a
// down-ramp/up-ramp pair of equal duration is an exact time mirror.
Eigen::VectorXd segment_disorder(const Segment& segment, double t_local);

// Profile at global time t in [0, total_duration]. At a boundary shared by
// two segments the later segment wins, so a jump takes effect at its own time.
Eigen::VectorXd disorder_at(const RampSchedule& schedule, double t);

// Checks durations, profile sizes, tau positivity, and continuity of
// profiles across non-jump boundaries.
void validate_schedule(const RampSchedule& schedule);

// Single exponential ramp from the chosen stagger to zero disorder,
// tau = 0.4 * t_ramp.
RampSchedule melt_schedule(const LatticeConfig& config, double t_ramp,
                           Stagger stagger);

// Ramp down, optional hold at zero disorder, exact time-mirror ramp up.
// Total duration 2 * t_ramp + t_hold.
RampSchedule boomerang_schedule(const LatticeConfig& config, double t_ramp,
                                double t_hold = 0.0,
                                Stagger stagger = Stagger::Small);

void to_json(nlohmann::json& j, const Segment& segment);
void from_json(const nlohmann::json& j, Segment& segment);
void to_json(nlohmann::json& j, const RampSchedule& schedule);
void from_json(const nlohmann::json& j, RampSchedule& schedule);

}  // namespace bhmelt

#endif
