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

#ifndef BHMELT_LATTICE_HPP
#define BHMELT_LATTICE_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace bhmelt {

// Beyond-nearest-neighbor tunneling hook. The device table has none; config
// files may add explicit bonds, which enter the hopping term like chain bonds.
struct ExtraBond {
  int i = 0;
  int j = 0;
  double J = 0.0;  // rad/us
};

enum class Stagger { Large, Small };

// Device parameters in internal angular units (rad/us; gamma1 in 1/us).
// Config files quote MHz cycle frequencies; the 2*pi conversion happens in
// load_lattice and nowhere else.
struct LatticeConfig {
  int L = 0;
  Eigen::VectorXd J;            // L-1 nearest-neighbor bonds
  Eigen::VectorXd U;            // per site, negative on this device
  double omega0 = 0.0;          // rotating-frame reference; inert at fixed N
  Eigen::VectorXd delta_large;  // per-site disorder, large stagger
  Eigen::VectorXd delta_small;  // per-site disorder, small stagger
  Eigen::VectorXd gamma1;       // per-site photon loss rates
  std::vector<ExtraBond> extra_bonds;

  const Eigen::VectorXd& stagger(Stagger which) const {
    return which == Stagger::Large ? delta_large : delta_small;
  }
};

// Throws ConfigError on length mismatches or unphysical values.
void validate(const LatticeConfig& config);

// Mean nearest-neighbor tunneling rate in rad/us.
double mean_J(const LatticeConfig& config);

// Duration of one tunneling cycle 1/(J/2pi) in us. Ramp times quoted in units
// of 1/J throughout are multiples of this.
double tunneling_cycle_us(const LatticeConfig& config);

// The seven-transmon chain of the experiment, transcribed from the device
// characterization table.
LatticeConfig device_lattice();

LatticeConfig load_lattice(const std::filesystem::path& path);
void save_lattice(const LatticeConfig& config, const std::filesystem::path& path);

}  // namespace bhmelt

#endif
