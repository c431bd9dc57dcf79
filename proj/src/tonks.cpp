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

#include "bhmelt/tonks.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <vector>

#include "bhmelt/errors.hpp"

namespace bhmelt {

namespace {

void check_filling(int L, int N) {
  if (L < 2) throw ParameterError("need at least two sites");
  if (N < 1 || N > L) {
    throw ParameterError("hardcore filling must satisfy 1 <= N <= L");
  }
}

// G_ij = sum over the top N modes of phi_m(i) phi_m(j).
Eigen::MatrixXd mode_correlations(const LatticeConfig& config, int N) {
  check_filling(config.L, N);
  ChainModes modes = chain_modes(config);
  Eigen::MatrixXd top = modes.orbitals.rightCols(N);
  return top * top.transpose();
}

}  // namespace

ChainModes chain_modes(const LatticeConfig& config) {
  validate(config);
  if (!config.extra_bonds.empty()) {
    throw ParameterError(
        "longer-range bonds have no hardcore chain-mode mapping");
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(config.L, config.L);
  for (int i = 0; i + 1 < config.L; ++i) {
    h(i, i + 1) = -config.J[i];
    h(i + 1, i) = -config.J[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("chain-mode eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd free_fermion_density(const LatticeConfig& config, int N) {
  return mode_correlations(config, N).diagonal();
}

Eigen::VectorXd free_fermion_g2(const LatticeConfig& config, int N) {
  Eigen::MatrixXd G = mode_correlations(config, N);
  int L = config.L;
  double nbar = static_cast<double>(N) / L;
  Eigen::VectorXd g2 = Eigen::VectorXd::Zero(L);
  for (int x = 1; x < L; ++x) {
    double acc = 0.0;
    for (int i = 0; i + x < L; ++i) {
      acc += G(i, i) * G(i + x, i + x) - G(i, i + x) * G(i, i + x);
    }
    g2[x] = acc / ((L - x) * nbar * nbar);
  }
  return g2;
}

Eigen::VectorXd jastrow_density(int L, int N, double width) {
  check_filling(L, N);
  if (width <= 0.0) width = static_cast<double>(L);

  Eigen::VectorXd coordinate(L);
  for (int i = 0; i < L; ++i) {
    coordinate[i] = i - 0.5 * (L - 1);
  }

  Eigen::VectorXd weight = Eigen::VectorXd::Zero(L);
  double total = 0.0;
  std::vector<int> sites(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) sites[static_cast<std::size_t>(i)] = i;
  while (true) {
    double amp = 1.0;
    for (int a = 0; a < N; ++a) {
      double xa = coordinate[sites[static_cast<std::size_t>(a)]];
      amp *= std::cos(std::numbers::pi * xa / width);
      for (int b = a + 1; b < N; ++b) {
        amp *= std::abs(xa - coordinate[sites[static_cast<std::size_t>(b)]]);
      }
    }
    double p = amp * amp;
    total += p;
    for (int a = 0; a < N; ++a) weight[sites[static_cast<std::size_t>(a)]] += p;

    int a = N - 1;
    while (a >= 0 && sites[static_cast<std::size_t>(a)] == L - N + a) --a;
    if (a < 0) break;
    ++sites[static_cast<std::size_t>(a)];
    for (int b = a + 1; b < N; ++b) {
      sites[static_cast<std::size_t>(b)] = sites[static_cast<std::size_t>(b - 1)] + 1;
    }
  }
  if (total <= 0.0) {
    throw ParameterError("pair-product state has zero total weight");
  }
  return weight / total;
}

}  // namespace bhmelt
