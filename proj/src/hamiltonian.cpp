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

#include "bhmelt/hamiltonian.hpp"

#include <cmath>
#include <vector>

#include "bhmelt/errors.hpp"

namespace bhmelt {

namespace {

struct Bond {
  int i;
  int j;
  double J;
};

std::vector<Bond> collect_bonds(const LatticeConfig& config) {
  std::vector<Bond> bonds;
  bonds.reserve(config.J.size() + config.extra_bonds.size());
  for (int i = 0; i + 1 < config.L; ++i) {
    bonds.push_back({i, i + 1, config.J[i]});
  }
  for (const auto& b : config.extra_bonds) {
    bonds.push_back({b.i, b.j, b.J});
  }
  return bonds;
}

}  // namespace

SplitHamiltonian build_split_hamiltonian(const LatticeConfig& config,
                                         const BasisSet& basis) {
  if (config.L != basis.L) {
    throw ParameterError("lattice size does not match basis size");
  }
  const auto dim = static_cast<Eigen::Index>(basis.states.size());
  SplitHamiltonian H;
  H.basis = &basis;
  H.occupation.resize(dim, config.L);

  std::vector<Eigen::Triplet<double>> triplets;
  const auto bonds = collect_bonds(config);

  for (Eigen::Index row = 0; row < dim; ++row) {
    const FockState& state = basis.states[static_cast<std::size_t>(row)];
    double diag = 0.0;
    for (int i = 0; i < config.L; ++i) {
      const double n = static_cast<double>(state[static_cast<std::size_t>(i)]);
      H.occupation(row, i) = n;
      diag += 0.5 * config.U[i] * n * (n - 1.0);
    }
    if (diag != 0.0) triplets.emplace_back(row, row, diag);

    for (const auto& bond : bonds) {
      // -J a_i^dag a_j moves a particle j -> i with amplitude sqrt((n_i+1) n_j).
      const int ni = state[static_cast<std::size_t>(bond.i)];
      const int nj = state[static_cast<std::size_t>(bond.j)];
      if (nj > 0 && ni < basis.n_max) {
        FockState moved = state;
        moved[static_cast<std::size_t>(bond.j)] -= 1;
        moved[static_cast<std::size_t>(bond.i)] += 1;
        const auto it = basis.index.find(moved);
        if (it != basis.index.end()) {
          const double amp =
              -bond.J * std::sqrt(static_cast<double>((ni + 1) * nj));
          triplets.emplace_back(static_cast<Eigen::Index>(it->second), row, amp);
          triplets.emplace_back(row, static_cast<Eigen::Index>(it->second), amp);
        }
      }
    }
  }

  H.static_part.resize(dim, dim);
  H.static_part.setFromTriplets(triplets.begin(), triplets.end());
  H.static_part.makeCompressed();
  return H;
}

HamiltonianMatrix build_hamiltonian(const LatticeConfig& config,
                                    const BasisSet& basis,
                                    const Eigen::VectorXd& site_energies) {
  if (site_energies.size() != config.L) {
    throw ParameterError("site energy vector does not match lattice size");
  }
  SplitHamiltonian split = build_split_hamiltonian(config, basis);
  HamiltonianMatrix H;
  H.basis = &basis;
  H.site_energies = site_energies;
  Eigen::VectorXd diag = split.occupation * site_energies;
  Eigen::SparseMatrix<double> diag_m(split.static_part.rows(),
                                     split.static_part.cols());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(diag.size()));
  for (Eigen::Index k = 0; k < diag.size(); ++k) {
    if (diag[k] != 0.0) triplets.emplace_back(k, k, diag[k]);
  }
  diag_m.setFromTriplets(triplets.begin(), triplets.end());
  H.matrix = split.static_part + diag_m;
  H.matrix.makeCompressed();
  return H;
}

Eigen::VectorXcd apply_hamiltonian(const HamiltonianMatrix& H,
                                   const Eigen::VectorXcd& psi) {
  if (psi.size() != H.matrix.rows()) {
    throw ParameterError("state dimension does not match Hamiltonian");
  }
  Eigen::VectorXcd out(psi.size());
  out.real() = H.matrix * psi.real().eval();
  out.imag() = H.matrix * psi.imag().eval();
  return out;
}

SpectralBounds gershgorin_bounds(const SplitHamiltonian& H,
                                 const Eigen::VectorXd& delta) {
  Eigen::VectorXd diag_extra = H.occupation * delta;
  SpectralBounds bounds;
  bool first = true;
  const auto& m = H.static_part;
  for (int col = 0; col < m.outerSize(); ++col) {
    double center = diag_extra[col];
    double radius = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) {
      if (it.row() == col) {
        center += it.value();
      } else {
        radius += std::abs(it.value());
      }
    }
    if (first) {
      bounds.lo = center - radius;
      bounds.hi = center + radius;
      first = false;
    } else {
      bounds.lo = std::min(bounds.lo, center - radius);
      bounds.hi = std::max(bounds.hi, center + radius);
    }
  }
  return bounds;
}

Eigen::SparseMatrix<double> annihilation_operator(const BasisSet& basis,
                                                  int site) {
  if (site < 0 || site >= basis.L) {
    throw ParameterError("annihilation site index out of range");
  }
  const auto dim = static_cast<Eigen::Index>(basis.states.size());
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const FockState& state = basis.states[static_cast<std::size_t>(col)];
    const int n = state[static_cast<std::size_t>(site)];
    if (n == 0) continue;
    FockState lowered = state;
    lowered[static_cast<std::size_t>(site)] -= 1;
    const auto it = basis.index.find(lowered);
    if (it != basis.index.end()) {
      triplets.emplace_back(static_cast<Eigen::Index>(it->second), col,
                            std::sqrt(static_cast<double>(n)));
    }
  }
  Eigen::SparseMatrix<double> a(dim, dim);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

}  // namespace bhmelt
