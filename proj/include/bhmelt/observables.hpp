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

#ifndef BHMELT_OBSERVABLES_HPP
#define BHMELT_OBSERVABLES_HPP

#include <Eigen/Dense>

#include "bhmelt/state.hpp"

namespace bhmelt {

// Expectation values on (normalized) many-body states. All operators used
// here are diagonal in the Fock basis except the single-site reduced density
// matrix, which keeps its coherences.

// <n_i> per site.
Eigen::VectorXd density(const StateVector& state);

// Single-site reduced density matrix, dimension (n_max + 1)^2.
Eigen::MatrixXcd reduced_density_matrix(const StateVector& state, int site);

// Mean linear entropy of the single-site marginals,
// E_gl = 2 (1 - (1/L) sum_i Tr rho_i^2). Zero exactly on product states.
double global_entanglement(const StateVector& state);

// Distance-binned pair correlation, length L:
//   g2(0)   = sum_i <n_i (n_i - 1)> / (L nbar^2)        (normal ordered)
//   g2(x>0) = sum_i <n_i n_{i+x}>   / ((L - x) nbar^2)
// Errors on vanishing mean density.
Eigen::VectorXd pair_correlation(const StateVector& state);

// Conditional occupation matrix, entry (i, j) = P(i|j):
//   P(i|j) = <n_i n_j> / <n_j>        for i != j
//   P(j|j) = <n_j (n_j - 1)> / <n_j>  (doublon weight)
// Columns over a fixed-N state sum to N - 1. Errors when any conditioning
// site is empty.
Eigen::MatrixXd conditional_probability(const StateVector& state);

// |<a|b>|^2 over a shared basis.
double overlap_fidelity(const StateVector& a, const StateVector& b);

// Least-squares fit of c + a cos(k x) to the short-distance window
// x = 0..floor(L/2) of a pair-correlation array, scanning k on the grid
// 0.005, 0.006, ..., <= pi. Above half filling the lattice aliases the
// oscillation wavevector, so the fit reports pi - k_fit there.
struct FriedelFit {
  double k = 0.0;
  double amplitude = 0.0;  // signed cosine coefficient
  double residual = 0.0;   // sum of squared fit errors
  bool oscillating = false;
};

FriedelFit friedel_fit(const Eigen::VectorXd& g2, double nbar);

}  // namespace bhmelt

#endif
