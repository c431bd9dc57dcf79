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

#include "bhmelt/schedule.hpp"

#include <cmath>
#include <string>

#include "bhmelt/errors.hpp"

namespace bhmelt {

double RampSchedule::total_duration() const {
  double total = 0.0;
  for (const auto& seg : segments) total += seg.duration;
  return total;
}

double exp_ramp_shape(double t, double duration, double tau) {
  if (duration <= 0.0 || tau <= 0.0) {
    throw ParameterError("ramp shape needs positive duration and tau");
  }
  const double tail = std::exp(-duration / tau);
  return (std::exp(-t / tau) - tail) / (1.0 - tail);
}

Eigen::VectorXd segment_disorder(const Segment& segment, double t_local) {
  switch (segment.kind) {
    case SegmentKind::Jump:
      return segment.end_profile;
    case SegmentKind::Hold:
      return segment.start_profile;
    case SegmentKind::ExpRamp: {
      const double s = exp_ramp_shape(t_local, segment.duration, segment.tau);
      return segment.end_profile +
             (segment.start_profile - segment.end_profile) * s;
    }
    case SegmentKind::ExpRampReverse: {
      const double s = exp_ramp_shape(segment.duration - t_local,
                                      segment.duration, segment.tau);
      // Same base and increment as the matching forward ramp, with start and
      // end swapped, so mirrored sample times give bit-identical profiles.
      return segment.start_profile +
             (segment.end_profile - segment.start_profile) * s;
    }
  }
  throw ParameterError("unknown segment kind");
}

Eigen::VectorXd disorder_at(const RampSchedule& schedule, double t) {
  if (schedule.segments.empty()) {
    throw ParameterError("schedule has no segments");
  }
  if (t < 0.0 || t > schedule.total_duration()) {
    throw ParameterError("time " + std::to_string(t) +
                         " us outside schedule duration");
  }
  double t_rem = t;
  const std::size_t last = schedule.segments.size() - 1;
  for (std::size_t k = 0; k < schedule.segments.size(); ++k) {
    const Segment& seg = schedule.segments[k];
    if (t_rem < seg.duration || (k == last && t_rem <= seg.duration)) {
      return segment_disorder(seg, t_rem);
    }
    t_rem -= seg.duration;
  }
  return segment_disorder(schedule.segments[last],
                          schedule.segments[last].duration);
}

void validate_schedule(const RampSchedule& schedule) {
  if (schedule.segments.empty()) {
    throw ParameterError("schedule has no segments");
  }
  const Eigen::Index L = schedule.segments.front().start_profile.size();
  for (std::size_t k = 0; k < schedule.segments.size(); ++k) {
    const Segment& seg = schedule.segments[k];
    if (seg.start_profile.size() != L || seg.end_profile.size() != L) {
      throw ParameterError("segment profiles have inconsistent sizes");
    }
    if (seg.duration < 0.0) {
      throw ParameterError("segment duration must be nonnegative");
    }
    if (seg.kind == SegmentKind::Jump && seg.duration != 0.0) {
      throw ParameterError("jump segments must have zero duration");
    }
    const bool is_ramp = seg.kind == SegmentKind::ExpRamp ||
                         seg.kind == SegmentKind::ExpRampReverse;
    if (is_ramp && (seg.duration <= 0.0 || seg.tau <= 0.0)) {
      throw ParameterError("ramp segments need positive duration and tau");
    }
    if (seg.kind == SegmentKind::Hold &&
        seg.start_profile != seg.end_profile) {
      throw ParameterError("hold segments must keep the profile constant");
    }
    if (k > 0) {
      const Segment& prev = schedule.segments[k - 1];
      const bool jump_boundary =
          seg.kind == SegmentKind::Jump || prev.kind == SegmentKind::Jump;
      if (!jump_boundary && prev.end_profile != seg.start_profile) {
        throw ParameterError("profile discontinuity at segment " +
                             std::to_string(k) + " without a jump");
      }
    }
  }
}

RampSchedule melt_schedule(const LatticeConfig& config, double t_ramp,
                           Stagger stagger) {
  if (t_ramp <= 0.0) {
    throw ParameterError("melt ramp time must be positive");
  }
  Segment seg;
  seg.kind = SegmentKind::ExpRamp;
  seg.duration = t_ramp;
  seg.tau = 0.4 * t_ramp;
  seg.start_profile = config.stagger(stagger);
  seg.end_profile = Eigen::VectorXd::Zero(config.L);
  RampSchedule schedule{{seg}};
  validate_schedule(schedule);
  return schedule;
}

RampSchedule boomerang_schedule(const LatticeConfig& config, double t_ramp,
                                double t_hold, Stagger stagger) {
  if (t_ramp <= 0.0) {
    throw ParameterError("boomerang ramp time must be positive");
  }
  if (t_hold < 0.0) {
    throw ParameterError("hold time must be nonnegative");
  }
  const Eigen::VectorXd profile = config.stagger(stagger);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(config.L);

  Segment down;
  down.kind = SegmentKind::ExpRamp;
  down.duration = t_ramp;
  down.tau = 0.4 * t_ramp;
  down.start_profile = profile;
  down.end_profile = zero;

  Segment up;
  up.kind = SegmentKind::ExpRampReverse;
  up.duration = t_ramp;
  up.tau = 0.4 * t_ramp;
  up.start_profile = zero;
  up.end_profile = profile;

  RampSchedule schedule;
  schedule.segments.push_back(down);
  if (t_hold > 0.0) {
    Segment hold;
    hold.kind = SegmentKind::Hold;
    hold.duration = t_hold;
    hold.start_profile = zero;
    hold.end_profile = zero;
    schedule.segments.push_back(hold);
  }
  schedule.segments.push_back(up);
  validate_schedule(schedule);
  return schedule;
}

namespace {

std::string kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Jump:
      return "jump";
    case SegmentKind::Hold:
      return "hold";
    case SegmentKind::ExpRamp:
      return "exp_ramp";
    case SegmentKind::ExpRampReverse:
      return "exp_ramp_reverse";
  }
  throw ParameterError("unknown segment kind");
}

SegmentKind kind_from_name(const std::string& name) {
  if (name == "jump") return SegmentKind::Jump;
  if (name == "hold") return SegmentKind::Hold;
  if (name == "exp_ramp") return SegmentKind::ExpRamp;
  if (name == "exp_ramp_reverse") return SegmentKind::ExpRampReverse;
  throw ConfigError("unknown segment kind '" + name + "'");
}

}  // namespace

void to_json(nlohmann::json& j, const Segment& segment) {
  j = nlohmann::json{
      {"kind", kind_name(segment.kind)},
      {"duration_us", segment.duration},
      {"start_profile_rad_per_us",
       std::vector<double>(segment.start_profile.begin(),
                           segment.start_profile.end())},
      {"end_profile_rad_per_us",
       std::vector<double>(segment.end_profile.begin(),
                           segment.end_profile.end())},
  };
  if (segment.kind == SegmentKind::ExpRamp ||
      segment.kind == SegmentKind::ExpRampReverse) {
    j["tau_us"] = segment.tau;
  }
}

void from_json(const nlohmann::json& j, Segment& segment) {
  segment.kind = kind_from_name(j.at("kind").get<std::string>());
  segment.duration = j.at("duration_us").get<double>();
  const auto start = j.at("start_profile_rad_per_us").get<std::vector<double>>();
  const auto end = j.at("end_profile_rad_per_us").get<std::vector<double>>();
  segment.start_profile =
      Eigen::Map<const Eigen::VectorXd>(start.data(),
                                        static_cast<Eigen::Index>(start.size()));
  segment.end_profile =
      Eigen::Map<const Eigen::VectorXd>(end.data(),
                                        static_cast<Eigen::Index>(end.size()));
  segment.tau = j.value("tau_us", 0.0);
}

void to_json(nlohmann::json& j, const RampSchedule& schedule) {
  j = nlohmann::json{{"segments", schedule.segments}};
}

void from_json(const nlohmann::json& j, RampSchedule& schedule) {
  schedule.segments = j.at("segments").get<std::vector<Segment>>();
  validate_schedule(schedule);
}

}  // namespace bhmelt
