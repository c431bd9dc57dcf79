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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "bhmelt/errors.hpp"
#include "bhmelt/lattice.hpp"

using namespace bhmelt;

TEST_CASE("device table in angular units") {
  LatticeConfig config = device_lattice();
  CHECK(config.L == 7);
  CHECK(config.J.size() == 6);
  CHECK(config.J[0] == doctest::Approx(2.0 * std::numbers::pi * 9.0625).epsilon(1e-14));
  CHECK(config.U[0] == doctest::Approx(-2.0 * std::numbers::pi * 241.0).epsilon(1e-14));
  CHECK(config.delta_small[0] ==
        doctest::Approx(2.0 * std::numbers::pi * -74.0).epsilon(1e-14));
  CHECK(config.delta_large[6] ==
        doctest::Approx(2.0 * std::numbers::pi * -327.0).epsilon(1e-14));
  CHECK(config.gamma1[0] == doctest::Approx(1.0 / 14.6).epsilon(1e-14));
  CHECK((config.U.array() < 0.0).all());
  CHECK((config.J.array() > 0.0).all());
}

TEST_CASE("one tunneling cycle is 2 pi over the mean rate") {
  LatticeConfig config = device_lattice();
  double mean_mhz = (9.0625 + 9.032 + 8.842 + 8.936 + 9.023 + 9.040) / 6.0;
  CHECK(mean_J(config) ==
        doctest::Approx(2.0 * std::numbers::pi * mean_mhz).epsilon(1e-14));
  CHECK(tunneling_cycle_us(config) ==
        doctest::Approx(1.0 / mean_mhz).epsilon(1e-14));
}

TEST_CASE("bundled lattice file matches the builtin table") {
  LatticeConfig from_file =
      load_lattice(std::filesystem::path(BHMELT_DATA_DIR) / "device.json");
  LatticeConfig builtin = device_lattice();
  CHECK(from_file.L == builtin.L);
  CHECK(from_file.J == builtin.J);
  CHECK(from_file.U == builtin.U);
  CHECK(from_file.delta_large == builtin.delta_large);
  CHECK(from_file.delta_small == builtin.delta_small);
  CHECK(from_file.gamma1 == builtin.gamma1);
}

TEST_CASE("save and load round-trip exactly") {
  LatticeConfig config = device_lattice();
  config.extra_bonds.push_back({0, 2, 1.5});
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / "bhmelt_lattice_rt.json";
  save_lattice(config, path);
  LatticeConfig loaded = load_lattice(path);
  CHECK(loaded.J == config.J);
  CHECK(loaded.U == config.U);
  CHECK(loaded.delta_large == config.delta_large);
  CHECK(loaded.delta_small == config.delta_small);
  CHECK(loaded.gamma1 == config.gamma1);
  REQUIRE(loaded.extra_bonds.size() == 1);
  CHECK(loaded.extra_bonds[0].i == 0);
  CHECK(loaded.extra_bonds[0].j == 2);
  CHECK(loaded.extra_bonds[0].J == config.extra_bonds[0].J);
  std::filesystem::remove(path);
}

TEST_CASE("malformed configs are rejected as config errors") {
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / "bhmelt_lattice_bad.json";
  {
    std::ofstream out(path);
    out << "{\"sites\": 7, \"J_MHz\": [1, 2, 3]}";
  }
  CHECK_THROWS_AS(load_lattice(path), ConfigError);
  {
    std::ofstream out(path);
    out << "not json";
  }
  CHECK_THROWS_AS(load_lattice(path), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_lattice("/nonexistent/bhmelt.json"), ConfigError);

  LatticeConfig config = device_lattice();
  config.J[2] = -1.0;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config = device_lattice();
  config.gamma1[0] = -0.1;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config = device_lattice();
  config.extra_bonds.push_back({0, 9, 1.0});
  CHECK_THROWS_AS(validate(config), ConfigError);
}

TEST_CASE("stagger selector returns the requested profile") {
  LatticeConfig config = device_lattice();
  CHECK(config.stagger(Stagger::Small) == config.delta_small);
  CHECK(config.stagger(Stagger::Large) == config.delta_large);
}
