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

#include "bhmelt/fock.hpp"

#include <string>

namespace bhmelt {

namespace {

// Depth-first enumeration in ascending lexicographic order. `budget` caps the
// occupation still assignable to sites >= depth for the sector constraint.
void enumerate_rec(int L, int n_max, const Sector& sector, int depth, int used,
                   FockState& current, std::vector<FockState>& out) {
  if (depth == L) {
    if (sector.kind != Sector::Kind::FixedN || used == sector.value) {
      out.push_back(current);
    }
    return;
  }
  for (int n = 0; n <= n_max; ++n) {
    int total = used + n;
    if (sector.kind == Sector::Kind::FixedN && total > sector.value) break;
    if (sector.kind == Sector::Kind::EnergyRestricted && total > sector.value) break;
    current[depth] = n;
    enumerate_rec(L, n_max, sector, depth + 1, total, current, out);
  }
  current[depth] = 0;
}

}  // namespace

BasisSet enumerate_basis(int L, int n_max, Sector sector) {
  if (L < 1) throw ParameterError("basis requires L >= 1");
  if (n_max < 1) throw ParameterError("basis requires n_max >= 1");
  if (sector.kind == Sector::Kind::FixedN &&
      (sector.value < 0 || sector.value > L * n_max)) {
    throw ParameterError("fixed-N sector requires 0 <= N <= L*n_max, got N = " +
                         std::to_string(sector.value));
  }
  if (sector.kind == Sector::Kind::EnergyRestricted && sector.value < 0) {
    throw ParameterError("energy-restricted sector requires cap >= 0");
  }

  BasisSet basis;
  basis.L = L;
  basis.n_max = n_max;
  basis.sector = sector;
  FockState current(L, 0);
  enumerate_rec(L, n_max, sector, 0, 0, current, basis.states);
  basis.index.reserve(basis.states.size());
  for (int k = 0; k < static_cast<int>(basis.states.size()); ++k) {
    basis.index.emplace(basis.states[k], k);
  }
  return basis;
}

int state_index(const BasisSet& basis, const FockState& s) {
  auto it = basis.index.find(s);
  if (it == basis.index.end()) {
    std::string repr;
    for (int n : s) repr += std::to_string(n) + " ";
    throw BasisLookupError("Fock state [ " + repr + "] not in basis");
  }
  return it->second;
}

BasisSet hardcore_projection(const BasisSet& basis) {
  return enumerate_basis(basis.L, 1, basis.sector);
}

}  // namespace bhmelt
