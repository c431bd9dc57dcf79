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

#ifndef BHMELT_TONKS_HPP
#define BHMELT_TONKS_HPP

#include <Eigen/Dense>

#include "bhmelt/lattice.hpp"

namespace bhmelt {

// Hardcore-limit oracles built from single-particle chain modes only. They
// deliberately avoid the many-body Hamiltonian and eigensolver code so exact
// diagonalization can be validated against an independent construction.

// Eigenmodes of the L x L open-chain hopping matrix -J_i between neighbors,
// energies ascending. Longer-range bonds have no hardcore mapping and are
// rejected.
struct ChainModes {
  Eigen::VectorXd energies;
  Eigen::MatrixXd orbitals;  // columns match energies
};

ChainModes chain_modes(const LatticeConfig& config);

// Density of N hardcore particles filling the top N chain modes.
Eigen::VectorXd free_fermion_density(const LatticeConfig& config, int N);

// Distance-binned pair correlation of the same state,
//   g2(0)   = 0
//   g2(x>0) = sum_i (n_i n_{i+x} - G_{i,i+x}^2) / ((L - x) nbar^2)
// with G the mode correlation matrix.
Eigen::VectorXd free_fermion_g2(const LatticeConfig& config, int N);

// Pair-product trial state on the open chain: amplitude
//   prod_i cos(pi x_i / width) * prod_{i<j} |x_i - x_j|
// over site coordinates x = site - (L-1)/2, summed exhaustively over all
// hardcore configurations. width <= 0 selects the default width L.
Eigen::VectorXd jastrow_density(int L, int N, double width = 0.0);

}  // namespace bhmelt

#endif
