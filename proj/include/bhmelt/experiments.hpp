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

#ifndef BHMELT_EXPERIMENTS_HPP
#define BHMELT_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "bhmelt/fock.hpp"
#include "bhmelt/lattice.hpp"

namespace bhmelt {

// Shared run context. Ramp durations are given in tunneling cycles
// (multiples of 2 pi / mean J); CSV columns also carry microseconds.
struct ExperimentOptions {
  LatticeConfig lattice;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 12345;
  int threads = 1;
};

// Half-filled-alternating style preparation patterns used on the device:
// N=1 -> {5}, N=2 -> {3,5}, N=3 -> {1,3,5}, N=4 -> {1,3,5,6}. The N=1
// pattern admits a second variant q=2 -> {3}.
FockState standard_preparation(int L, int N, int q = 1);

void run_spectrum(const ExperimentOptions& options, int N, int n_slices,
                  Stagger stagger);

void run_melt(const ExperimentOptions& options, int N, int q,
              double t_ramp_cycles, int n_samples, double dt_divisor);

void run_reversibility(const ExperimentOptions& options, int N, int q,
                       int n_points, double t_min_cycles, double t_max_cycles,
                       double t_hold_cycles, bool lossy, int n_trajectories,
                       double dt_divisor);

void run_fluid(const ExperimentOptions& options, int N);

void run_g2(const ExperimentOptions& options, int N);

void run_conditional(const ExperimentOptions& options, int N, int j);

void run_entanglement(const ExperimentOptions& options, int N, int n_slices);

void run_readout_demo(const ExperimentOptions& options, int N, int n_shots,
                      int n_repeats);

}  // namespace bhmelt

#endif
