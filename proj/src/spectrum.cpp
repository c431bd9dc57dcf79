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

#include "bhmelt/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "bhmelt/errors.hpp"

namespace bhmelt {

namespace {

void fix_column_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index imax = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

SpectrumSlice diagonalize_dense(const Eigen::MatrixXd& dense, double s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw Error("eigensolver failed to converge");
  }
  SpectrumSlice slice;
  slice.s = s;
  slice.energies = solver.eigenvalues();
  slice.eigenvectors = solver.eigenvectors();
  fix_column_signs(slice.eigenvectors);
  return slice;
}

SpectrumSlice diagonalize_at(const LatticeConfig& config, const BasisSet& basis,
                             const Eigen::VectorXd& delta, double s) {
  if (basis.dimension() > kDenseDimensionLimit) {
    throw ParameterError("basis dimension " + std::to_string(basis.dimension()) +
                         " exceeds the dense-solver limit");
  }
  HamiltonianMatrix H = build_hamiltonian(config, basis, delta);
  return diagonalize_dense(Eigen::MatrixXd(H.matrix), s);
}

// Largest and second-largest |overlap| of `reference` against the columns.
struct OverlapPick {
  int best = 0;
  double best_abs = 0.0;
  double second_abs = 0.0;
};

OverlapPick pick_by_overlap(const Eigen::MatrixXd& columns,
                            const Eigen::VectorXd& reference) {
  Eigen::VectorXd overlaps = (columns.transpose() * reference).cwiseAbs();
  OverlapPick pick;
  for (int k = 0; k < overlaps.size(); ++k) {
    if (overlaps[k] > pick.best_abs) {
      pick.second_abs = pick.best_abs;
      pick.best_abs = overlaps[k];
      pick.best = k;
    } else if (overlaps[k] > pick.second_abs) {
      pick.second_abs = overlaps[k];
    }
  }
  return pick;
}

AdiabaticTrack walk_track(const LatticeConfig& config, const BasisSet& basis,
                          Stagger stagger, const Eigen::VectorXd& start_vector,
                          const std::vector<double>& s_values) {
  const Eigen::VectorXd& profile = config.stagger(stagger);
  AdiabaticTrack track;
  track.slices.reserve(s_values.size());
  track.vectors.resize(start_vector.size(),
                       static_cast<Eigen::Index>(s_values.size()));

  Eigen::VectorXd previous = start_vector;
  for (std::size_t k = 0; k < s_values.size(); ++k) {
    double s = s_values[k];
    SpectrumSlice slice = diagonalize_at(config, basis, s * profile, s);
    OverlapPick pick = pick_by_overlap(slice.eigenvectors, previous);
    if (pick.best_abs - pick.second_abs < 1e-6) {
      throw AmbiguityError("eigenstate tracking is ambiguous", s);
    }
    Eigen::VectorXd chosen = slice.eigenvectors.col(pick.best);
    if (chosen.dot(previous) < 0.0) chosen = -chosen;
    track.slices.push_back({s, pick.best, slice.energies[pick.best]});
    track.vectors.col(static_cast<Eigen::Index>(k)) = chosen;
    previous = chosen;
  }
  return track;
}

}  // namespace

SpectrumSlice diagonalize(const HamiltonianMatrix& H) {
  if (H.basis == nullptr) throw ParameterError("Hamiltonian has no basis");
  if (H.matrix.rows() > kDenseDimensionLimit) {
    throw ParameterError("basis dimension " + std::to_string(H.matrix.rows()) +
                         " exceeds the dense-solver limit");
  }
  Eigen::MatrixXd dense = Eigen::MatrixXd(H.matrix);
  if ((dense - dense.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error("Hamiltonian matrix is not symmetric");
  }
  return diagonalize_dense(dense, 0.0);
}

AnchorResult anchored_eigenstate(const LatticeConfig& config,
                                 const BasisSet& basis,
                                 const Eigen::VectorXd& profile,
                                 const FockState& fock, double threshold) {
  SpectrumSlice slice = diagonalize_at(config, basis, profile, 1.0);
  Eigen::VectorXd target =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.states.size()));
  target[state_index(basis, fock)] = 1.0;

  OverlapPick pick = pick_by_overlap(slice.eigenvectors, target);
  AnchorResult anchor;
  anchor.index = pick.best;
  anchor.energy = slice.energies[pick.best];
  anchor.overlap_sq = pick.best_abs * pick.best_abs;
  anchor.vector = slice.eigenvectors.col(pick.best);
  if (anchor.vector[state_index(basis, fock)] < 0.0) {
    anchor.vector = -anchor.vector;
  }
  if (anchor.overlap_sq < threshold) {
    throw ParameterError(
        "target Fock state is not close to a single full-disorder eigenstate "
        "(squared overlap " +
        std::to_string(anchor.overlap_sq) + " below threshold " +
        std::to_string(threshold) + ")");
  }
  return anchor;
}

std::vector<double> ramp_time_grid(int n_slices) {
  if (n_slices < 2) throw ParameterError("ramp grid needs at least two slices");
  std::vector<double> s_values(static_cast<std::size_t>(n_slices));
  for (int k = 0; k < n_slices; ++k) {
    double t = static_cast<double>(k) / (n_slices - 1);
    s_values[static_cast<std::size_t>(k)] = exp_ramp_shape(t, 1.0, 0.4);
  }
  s_values.front() = 1.0;
  s_values.back() = 0.0;
  return s_values;
}

AdiabaticTrack track_eigenstate(const LatticeConfig& config,
                                const BasisSet& basis, Stagger stagger,
                                const FockState& initial_fock, int n_slices,
                                double anchor_threshold) {
  AnchorResult anchor = anchored_eigenstate(
      config, basis, config.stagger(stagger), initial_fock, anchor_threshold);
  AdiabaticTrack track = walk_track(config, basis, stagger, anchor.vector,
                                    ramp_time_grid(n_slices));
  track.initial_fock = initial_fock;
  track.anchor_overlap_sq = anchor.overlap_sq;
  return track;
}

AdiabaticTrack continue_track(const LatticeConfig& config,
                              const BasisSet& basis, Stagger stagger,
                              const Eigen::VectorXd& start_vector,
                              const std::vector<double>& s_values) {
  if (s_values.empty()) throw ParameterError("empty ramp grid");
  if (start_vector.size() != static_cast<Eigen::Index>(basis.states.size())) {
    throw ParameterError("start vector does not match the basis dimension");
  }
  return walk_track(config, basis, stagger, start_vector.normalized(),
                    s_values);
}

std::vector<SpectrumSlice> band_spectrum(const LatticeConfig& config,
                                         const BasisSet& basis, Stagger stagger,
                                         int n_slices) {
  const Eigen::VectorXd& profile = config.stagger(stagger);
  std::vector<double> s_values = ramp_time_grid(n_slices);
  std::vector<SpectrumSlice> slices;
  slices.reserve(s_values.size());
  for (double s : s_values) {
    slices.push_back(diagonalize_at(config, basis, s * profile, s));
  }
  return slices;
}

}  // namespace bhmelt
