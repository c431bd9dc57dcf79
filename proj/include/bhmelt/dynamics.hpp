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

#ifndef BHMELT_DYNAMICS_HPP
#define BHMELT_DYNAMICS_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "bhmelt/lattice.hpp"
#include "bhmelt/schedule.hpp"
#include "bhmelt/state.hpp"

namespace bhmelt {

// Classical RK4 on the Schroedinger equation, with the Hamiltonian shifted to
// the center of its Gershgorin disc per segment (the phase is restored
// afterwards). The automatic fixed step 1/(dt_divisor * radius) keeps the
// norm drift below 1e-8 over ramps up to two hundred tunneling cycles.
struct PropagatorSettings {
  enum class Mode { Fixed, Adaptive };
  Mode mode = Mode::Fixed;
  double fixed_dt = 0.0;  // us; 0 selects the automatic step
  double dt_divisor = 180.0;
  double tolerance = 1e-10;  // adaptive mode, per-step local error
  double max_step = std::numeric_limits<double>::infinity();  // us
};

StateVector evolve(const StateVector& psi0, const LatticeConfig& config,
                   const RampSchedule& schedule,
                   const PropagatorSettings& settings = {});

struct SamplePoint {
  double t_us = 0.0;
  StateVector state;
};

// As evolve, but records the state at each requested time. Sample times must
// be sorted, unique, and inside [0, total_duration]; steps are split so each
// sample lands exactly on a step boundary.
std::vector<SamplePoint> evolve_sampled(const StateVector& psi0,
                                        const LatticeConfig& config,
                                        const RampSchedule& schedule,
                                        const std::vector<double>& sample_times,
                                        const PropagatorSettings& settings = {});

// Prepare the dressed localized eigenstate anchored to `initial_fock` at full
// disorder, then run the exponential melt ramp, sampling along the way.
struct MeltResult {
  double anchor_overlap_sq = 0.0;
  std::vector<SamplePoint> samples;  // last sample is the final state
};

MeltResult melt(const FockState& initial_fock, const LatticeConfig& config,
                const BasisSet& basis, double t_ramp_us,
                const std::vector<double>& sample_times,
                Stagger stagger = Stagger::Small,
                const PropagatorSettings& settings = {},
                double anchor_threshold = 0.95);

// Melt, hold, ramp back up, and compare against the prepared state.
struct ReversibilityResult {
  double anchor_overlap_sq = 0.0;
  double overlap_fidelity = 0.0;  // |<prepared|final>|^2
  double occupation_return_probability = 0.0;  // same occupied-site pattern
};

ReversibilityResult reversibility(const FockState& initial_fock,
                                  const LatticeConfig& config,
                                  const BasisSet& basis, double t_ramp_us,
                                  double t_hold_us = 0.0,
                                  Stagger stagger = Stagger::Small,
                                  const PropagatorSettings& settings = {},
                                  double anchor_threshold = 0.95);

// Quantum-trajectory photon loss: jump operators sqrt(gamma1_i) a_i, decided
// at step granularity. Trajectory k draws from derive_seed(seed, k), so the
// ensemble is reproducible for any thread count. With all rates zero every
// trajectory equals the closed-system evolve output exactly.
struct LossyEnsemble {
  std::vector<StateVector> states;  // normalized final states
  std::vector<int> jump_counts;
  std::uint64_t seed = 0;
};

LossyEnsemble evolve_lossy(const StateVector& psi0, const LatticeConfig& config,
                           const RampSchedule& schedule, int n_trajectories,
                           std::uint64_t seed,
                           const PropagatorSettings& settings = {},
                           int n_threads = 1);

// Ensemble mean of |<reference|trajectory>|^2.
double ensemble_fidelity(const LossyEnsemble& ensemble,
                         const StateVector& reference);

}  // namespace bhmelt

#endif
