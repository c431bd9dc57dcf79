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

#ifndef BHMELT_RNG_HPP
#define BHMELT_RNG_HPP

#include <cstdint>

namespace bhmelt {

// splitmix64 step (Steele, Lea, Flood 2014). Used both as the stream generator
// and as the seed-derivation hash so that derived streams are decorrelated.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic child seed for trajectory/repeat `index` of a run seeded with
// `seed`. Identical across platforms and thread schedules.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  std::uint64_t t = h + index;
  return splitmix64(t);
}

// Minimal counter-based stream. Not std::uniform_real_distribution: the
// standard leaves that implementation-defined, which would break byte-level
// output reproducibility across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1]; safe as a survival threshold (never 0).
  double uniform_open0() { return 1.0 - uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace bhmelt

#endif
