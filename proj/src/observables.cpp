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

#include "bhmelt/observables.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>
#include <vector>

#include "bhmelt/errors.hpp"

namespace bhmelt {

namespace {

using Complex = std::complex<double>;

void check_state(const StateVector& state) {
  if (state.basis == nullptr) throw ParameterError("state has no basis");
  if (state.amplitudes.size() !=
      static_cast<Eigen::Index>(state.basis->states.size())) {
    throw ParameterError("state amplitudes do not match the basis dimension");
  }
}

// <n_i n_j> for i != j, <n_i (n_i - 1)> on the diagonal.
Eigen::MatrixXd occupation_correlations(const StateVector& state) {
  const BasisSet& basis = *state.basis;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(basis.L, basis.L);
  for (std::size_t k = 0; k < basis.states.size(); ++k) {
    double p = std::norm(state.amplitudes[static_cast<Eigen::Index>(k)]);
    if (p == 0.0) continue;
    const FockState& s = basis.states[k];
    for (int i = 0; i < basis.L; ++i) {
      if (s[static_cast<std::size_t>(i)] == 0) continue;
      double ni = s[static_cast<std::size_t>(i)];
      C(i, i) += p * ni * (ni - 1.0);
      for (int j = i + 1; j < basis.L; ++j) {
        double nj = s[static_cast<std::size_t>(j)];
        if (nj == 0.0) continue;
        C(i, j) += p * ni * nj;
        C(j, i) += p * ni * nj;
      }
    }
  }
  return C;
}

}  // namespace

Eigen::VectorXd density(const StateVector& state) {
  check_state(state);
  const BasisSet& basis = *state.basis;
  Eigen::VectorXd n = Eigen::VectorXd::Zero(basis.L);
  for (std::size_t k = 0; k < basis.states.size(); ++k) {
    double p = std::norm(state.amplitudes[static_cast<Eigen::Index>(k)]);
    if (p == 0.0) continue;
    const FockState& s = basis.states[k];
    for (int i = 0; i < basis.L; ++i) {
      n[i] += p * s[static_cast<std::size_t>(i)];
    }
  }
  return n;
}

Eigen::MatrixXcd reduced_density_matrix(const StateVector& state, int site) {
  check_state(state);
  const BasisSet& basis = *state.basis;
  if (site < 0 || site >= basis.L) {
    throw ParameterError("site index out of range");
  }
  int d = basis.n_max + 1;

  std::unordered_map<FockState, Eigen::VectorXcd, FockStateHash> groups;
  FockState rest;
  rest.reserve(static_cast<std::size_t>(basis.L) - 1);
  for (std::size_t k = 0; k < basis.states.size(); ++k) {
    const FockState& s = basis.states[k];
    rest = s;
    rest.erase(rest.begin() + site);
    auto [it, inserted] = groups.try_emplace(rest, Eigen::VectorXcd::Zero(d));
    it->second[s[static_cast<std::size_t>(site)]] +=
        state.amplitudes[static_cast<Eigen::Index>(k)];
  }

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [key, amps] : groups) {
    rho.noalias() += amps * amps.adjoint();
  }
  return rho;
}

double global_entanglement(const StateVector& state) {
  check_state(state);
  int L = state.basis->L;
  double purity_sum = 0.0;
  for (int i = 0; i < L; ++i) {
    purity_sum += reduced_density_matrix(state, i).squaredNorm();
  }
  return 2.0 - 2.0 * purity_sum / L;
}

Eigen::VectorXd pair_correlation(const StateVector& state) {
  check_state(state);
  int L = state.basis->L;
  Eigen::VectorXd n = density(state);
  double nbar = n.sum() / L;
  if (nbar <= 1e-12) {
    throw UndefinedDensityError("pair correlation undefined at zero density");
  }
  Eigen::MatrixXd C = occupation_correlations(state);
  Eigen::VectorXd g2 = Eigen::VectorXd::Zero(L);
  g2[0] = C.trace() / (L * nbar * nbar);
  for (int x = 1; x < L; ++x) {
    double acc = 0.0;
    for (int i = 0; i + x < L; ++i) acc += C(i, i + x);
    g2[x] = acc / ((L - x) * nbar * nbar);
  }
  return g2;
}

Eigen::MatrixXd conditional_probability(const StateVector& state) {
  check_state(state);
  int L = state.basis->L;
  Eigen::VectorXd n = density(state);
  for (int j = 0; j < L; ++j) {
    if (n[j] < 1e-12) {
      throw DegenerateConditionError("conditioning site " + std::to_string(j) +
                                     " is empty");
    }
  }
  Eigen::MatrixXd C = occupation_correlations(state);
  Eigen::MatrixXd P(L, L);
  for (int j = 0; j < L; ++j) {
    for (int i = 0; i < L; ++i) {
      P(i, j) = C(i, j) / n[j];
    }
  }
  return P;
}

double overlap_fidelity(const StateVector& a, const StateVector& b) {
  check_same_basis(a, b);
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

FriedelFit friedel_fit(const Eigen::VectorXd& g2, double nbar) {
  if (nbar <= 0.0) throw ParameterError("mean density must be positive");
  int n_window = static_cast<int>(g2.size()) / 2 + 1;
  if (g2.size() < 2 || n_window < 4) {
    throw FitError("pair-correlation window too short for a cosine fit");
  }

  Eigen::VectorXd y = g2.head(n_window);
  Eigen::VectorXd x(n_window);
  for (int i = 0; i < n_window; ++i) x[i] = i;

  FriedelFit best;
  best.residual = std::numeric_limits<double>::infinity();
  int n_grid = static_cast<int>((std::numbers::pi - 0.005) / 0.001) + 1;
  Eigen::MatrixXd A(n_window, 2);
  A.col(0).setOnes();
  for (int j = 0; j < n_grid; ++j) {
    double k = 0.005 + 0.001 * j;
    A.col(1) = (k * x.array()).cos();
    Eigen::Vector2d coef =
        A.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
    double ssr = (A * coef - y).squaredNorm();
    if (ssr < best.residual) {
      best.residual = ssr;
      best.k = k;
      best.amplitude = coef[1];
    }
  }
  if (nbar > 0.5) best.k = std::numbers::pi - best.k;
  best.oscillating = std::abs(best.amplitude) >= 0.05;
  return best;
}

}  // namespace bhmelt
