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

#ifndef BHMELT_STATE_HPP
#define BHMELT_STATE_HPP

#include <Eigen/Dense>
#include <complex>

#include "bhmelt/errors.hpp"
#include "bhmelt/fock.hpp"

namespace bhmelt {

// Many-body state over a fixed BasisSet. Closed-system propagation keeps
// the norm within 1e-8 of one.
struct StateVector {
  const BasisSet* basis = nullptr;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

inline StateVector make_state(const BasisSet& basis,
                              const Eigen::VectorXcd& amplitudes) {
  if (amplitudes.size() != static_cast<Eigen::Index>(basis.states.size())) {
    throw ParameterError("amplitudes do not match the basis dimension");
  }
  StateVector psi;
  psi.basis = &basis;
  psi.amplitudes = amplitudes;
  return psi;
}

inline StateVector make_state(const BasisSet& basis,
                              const Eigen::VectorXd& amplitudes) {
  return make_state(basis, Eigen::VectorXcd(amplitudes.cast<std::complex<double>>()));
}

inline StateVector fock_state_vector(const BasisSet& basis,
                                     const FockState& fock) {
  StateVector psi;
  psi.basis = &basis;
  psi.amplitudes = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(basis.states.size()));
  psi.amplitudes[static_cast<Eigen::Index>(state_index(basis, fock))] = 1.0;
  return psi;
}

inline void check_same_basis(const StateVector& a, const StateVector& b) {
  if (a.basis == nullptr || a.basis != b.basis) {
    throw ParameterError("states are defined over different bases");
  }
}

}  // namespace bhmelt

#endif
