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

#ifndef BHMELT_FOCK_HPP
#define BHMELT_FOCK_HPP

#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "bhmelt/errors.hpp"

namespace bhmelt {

// Per-site photon occupation numbers n_i, i = 0..L-1.
using FockState = std::vector<int>;

inline int total_occupation(const FockState& s) {
  return std::accumulate(s.begin(), s.end(), 0);
}

struct FockStateHash {
  std::size_t operator()(const FockState& s) const {
    // FNV-1a over the occupation bytes; occupations are tiny non-negative ints.
    std::uint64_t h = 1469598103934665603ULL;
    for (int n : s) {
      h ^= static_cast<std::uint64_t>(n);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Hilbert-space restriction: one fixed particle number, a cap on the total
// excitation number, or every occupation tuple up to n_max per site.
struct Sector {
  enum class Kind { FixedN, EnergyRestricted, Full };
  Kind kind = Kind::Full;
  int value = 0;  // N for FixedN, the cap for EnergyRestricted

  static Sector fixed_n(int n) { return {Kind::FixedN, n}; }
  static Sector energy_restricted(int cap) { return {Kind::EnergyRestricted, cap}; }
  static Sector full() { return {Kind::Full, 0}; }
};

// Indexed many-body basis in canonical (ascending lexicographic) order, site 0
// most significant. Immutable after construction.
struct BasisSet {
  int L = 0;
  int n_max = 0;
  Sector sector;
  std::vector<FockState> states;
  std::unordered_map<FockState, int, FockStateHash> index;

  int dimension() const { return static_cast<int>(states.size()); }
};

BasisSet enumerate_basis(int L, int n_max, Sector sector);

// Ordinal of `s` in the canonical order; throws BasisLookupError if absent.
int state_index(const BasisSet& basis, const FockState& s);

// Sub-basis with n_max = 1 and the same L and sector constraint.
BasisSet hardcore_projection(const BasisSet& basis);

}  // namespace bhmelt

#endif
