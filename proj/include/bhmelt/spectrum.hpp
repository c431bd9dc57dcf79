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

#ifndef BHMELT_SPECTRUM_HPP
#define BHMELT_SPECTRUM_HPP

#include <Eigen/Dense>
#include <vector>

#include "bhmelt/fock.hpp"
#include "bhmelt/hamiltonian.hpp"
#include "bhmelt/lattice.hpp"
#include "bhmelt/schedule.hpp"

namespace bhmelt {

// Dense-solver cutoff; all supported sectors of the 7-site device fit.
inline constexpr int kDenseDimensionLimit = 2000;

// Instantaneous spectrum at one point of the disorder ramp. The Hamiltonian
// is real symmetric, so eigenvectors are real; each column's sign is fixed by
// making its largest-magnitude component positive.
struct SpectrumSlice {
  double s = 0.0;               // ramp parameter, 1 = full disorder
  Eigen::VectorXd energies;     // ascending, rad/us
  Eigen::MatrixXd eigenvectors; // columns match energies
};

SpectrumSlice diagonalize(const HamiltonianMatrix& H);

// Localized eigenstate of the full-disorder Hamiltonian with the largest
// squared overlap against a target Fock state. The attractive lattice dresses
// bare product states, so preparation targets this eigenstate rather than the
// bare Fock vector.
struct AnchorResult {
  Eigen::VectorXd vector;
  double overlap_sq = 0.0;
  int index = 0;
  double energy = 0.0;
};

AnchorResult anchored_eigenstate(const LatticeConfig& config,
                                 const BasisSet& basis,
                                 const Eigen::VectorXd& profile,
                                 const FockState& fock,
                                 double threshold = 0.95);

struct TrackedSlice {
  double s = 0.0;
  int index = 0;      // position in the ascending spectrum
  double energy = 0.0;
};

// Eigenstate followed by overlap continuity along a ramp grid. `vectors`
// stores the tracked eigenvector per slice, one column per grid point.
struct AdiabaticTrack {
  FockState initial_fock;
  double anchor_overlap_sq = 1.0;
  std::vector<TrackedSlice> slices;
  Eigen::MatrixXd vectors;
};

// Grid of ramp parameters visited by an exponential melt of unit duration,
// sampled uniformly in time: s_k runs from 1 down to 0.
std::vector<double> ramp_time_grid(int n_slices);

// Anchor at s = 1, then follow the eigenstate down to s = 0 by maximizing
// |<previous|current>| slice to slice. Two candidates within 1e-6 of each
// other raise an ambiguity error.
AdiabaticTrack track_eigenstate(const LatticeConfig& config,
                                const BasisSet& basis, Stagger stagger,
                                const FockState& initial_fock, int n_slices,
                                double anchor_threshold = 0.95);

// Same continuity rule, but starting from an arbitrary vector and walking an
// explicit s grid (used to re-track a melted state back up the ramp).
AdiabaticTrack continue_track(const LatticeConfig& config,
                              const BasisSet& basis, Stagger stagger,
                              const Eigen::VectorXd& start_vector,
                              const std::vector<double>& s_values);

// Full spectrum on the ramp grid, for band-structure output.
std::vector<SpectrumSlice> band_spectrum(const LatticeConfig& config,
                                         const BasisSet& basis, Stagger stagger,
                                         int n_slices);

}  // namespace bhmelt

#endif
