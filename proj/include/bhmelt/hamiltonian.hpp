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

#ifndef BHMELT_HAMILTONIAN_HPP
#define BHMELT_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

#include "bhmelt/fock.hpp"
#include "bhmelt/lattice.hpp"

namespace bhmelt {

// H/hbar = -sum_<ij> J_ij a_i^dag a_j + sum_i (U_i/2) n_i(n_i-1) + sum_i d_i n_i
// in the rotating frame at the lattice degeneracy frequency. J > 0, U < 0, so
// the fluid "ground" state is the highest-energy state of each N sector.
//
// Split form: `static_part` holds the hopping and interaction terms, which do
// not change during a ramp; the disorder diagonal is occupation * delta(t).
struct SplitHamiltonian {
  const BasisSet* basis = nullptr;
  Eigen::SparseMatrix<double> static_part;  // real symmetric, rad/us
  Eigen::MatrixXd occupation;               // dim x L, n_i per basis state
};

// Fully assembled matrix at one disorder profile.
struct HamiltonianMatrix {
  const BasisSet* basis = nullptr;
  Eigen::SparseMatrix<double> matrix;  // real symmetric, rad/us
  Eigen::VectorXd site_energies;       // the delta used, rad/us
};

SplitHamiltonian build_split_hamiltonian(const LatticeConfig& config,
                                         const BasisSet& basis);

HamiltonianMatrix build_hamiltonian(const LatticeConfig& config,
                                    const BasisSet& basis,
                                    const Eigen::VectorXd& site_energies);

// y = H * psi for a complex state over the same basis.
Eigen::VectorXcd apply_hamiltonian(const HamiltonianMatrix& H,
                                   const Eigen::VectorXcd& psi);

// Gershgorin disc bounds [lo, hi] on the spectrum of static_part +
// diag(occupation * delta). Cheap; used for integrator step control.
struct SpectralBounds {
  double lo = 0.0;
  double hi = 0.0;
  double center() const { return 0.5 * (lo + hi); }
  double radius() const { return 0.5 * (hi - lo); }
};

SpectralBounds gershgorin_bounds(const SplitHamiltonian& H,
                                 const Eigen::VectorXd& delta);

// Annihilation operator a_site as a map between basis states (dimension-
// preserving over ENR/full bases; rows for states outside the basis are
// dropped). Needed by the quantum-trajectory loss model.
Eigen::SparseMatrix<double> annihilation_operator(const BasisSet& basis, int site);

}  // namespace bhmelt

#endif
