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

#include "bhmelt/lattice.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "bhmelt/errors.hpp"

namespace bhmelt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXd from_mhz(const std::vector<double>& values) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] = kTwoPi * values[k];
  return out;
}

std::vector<double> to_mhz(const Eigen::VectorXd& values) {
  std::vector<double> out(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) out[k] = values[k] / kTwoPi;
  return out;
}

Eigen::VectorXd from_plain(const std::vector<double>& values) {
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

}  // namespace

void validate(const LatticeConfig& config) {
  if (config.L < 2) throw ConfigError("lattice needs at least 2 sites");
  if (config.J.size() != config.L - 1) {
    throw ConfigError("J must have L-1 entries");
  }
  auto expect_l = [&](const Eigen::VectorXd& v, const char* name) {
    if (v.size() != config.L) {
      throw ConfigError(std::string(name) + " must have L entries");
    }
  };
  expect_l(config.U, "U");
  expect_l(config.delta_large, "stagger_large");
  expect_l(config.delta_small, "stagger_small");
  expect_l(config.gamma1, "gamma1");
  if ((config.gamma1.array() < 0.0).any()) {
    throw ConfigError("gamma1 rates must be non-negative");
  }
  if ((config.J.array() <= 0.0).any()) {
    throw ConfigError("tunneling rates must be positive");
  }
  for (const auto& bond : config.extra_bonds) {
    if (bond.i < 0 || bond.j < 0 || bond.i >= config.L || bond.j >= config.L ||
        bond.i == bond.j) {
      throw ConfigError("extra bond site indices out of range");
    }
  }
}

double mean_J(const LatticeConfig& config) { return config.J.mean(); }

double tunneling_cycle_us(const LatticeConfig& config) {
  return kTwoPi / mean_J(config);
}

LatticeConfig device_lattice() {
  LatticeConfig config;
  config.L = 7;
  config.J = from_mhz({9.0625, 9.032, 8.842, 8.936, 9.023, 9.040});
  config.U = from_mhz({-241, -240, -240, -239, -239, -239, -240});
  // Site energies are offsets from the degeneracy point (the common lattice
  // frequency); a uniform shift only changes a global phase at fixed N.
  config.delta_large = from_mhz({-406, 176, -350, 140, -303, 204, -327});
  config.delta_small = from_mhz({-74, 44, -49, 59, -34, 74, -19});
  config.gamma1 = from_plain({1.0 / 14.6, 1.0 / 35.5, 1.0 / 57.7, 1.0 / 28.4,
                              1.0 / 60.3, 1.0 / 54.7, 1.0 / 40.0});
  validate(config);
  return config;
}

LatticeConfig load_lattice(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lattice config: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("lattice config parse failure: " + std::string(e.what()));
  }

  LatticeConfig config;
  try {
    config.L = doc.at("sites").get<int>();
    config.J = from_mhz(doc.at("J_MHz").get<std::vector<double>>());
    config.U = from_mhz(doc.at("U_MHz").get<std::vector<double>>());
    config.delta_large =
        from_mhz(doc.at("stagger_large_MHz").get<std::vector<double>>());
    config.delta_small =
        from_mhz(doc.at("stagger_small_MHz").get<std::vector<double>>());
    if (doc.contains("gamma1_per_us")) {
      config.gamma1 = from_plain(doc.at("gamma1_per_us").get<std::vector<double>>());
    } else {
      config.gamma1 = Eigen::VectorXd::Zero(config.L);
    }
    if (doc.contains("bonds")) {
      for (const auto& entry : doc.at("bonds")) {
        ExtraBond bond;
        bond.i = entry.at("i").get<int>();
        bond.j = entry.at("j").get<int>();
        bond.J = kTwoPi * entry.at("J_MHz").get<double>();
        config.extra_bonds.push_back(bond);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("lattice config schema failure: " + std::string(e.what()));
  }
  validate(config);
  return config;
}

void save_lattice(const LatticeConfig& config, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["sites"] = config.L;
  doc["J_MHz"] = to_mhz(config.J);
  doc["U_MHz"] = to_mhz(config.U);
  doc["stagger_large_MHz"] = to_mhz(config.delta_large);
  doc["stagger_small_MHz"] = to_mhz(config.delta_small);
  std::vector<double> gamma(static_cast<std::size_t>(config.gamma1.size()));
  for (Eigen::Index k = 0; k < config.gamma1.size(); ++k) gamma[k] = config.gamma1[k];
  doc["gamma1_per_us"] = gamma;
  if (!config.extra_bonds.empty()) {
    nlohmann::json bonds = nlohmann::json::array();
    for (const auto& bond : config.extra_bonds) {
      bonds.push_back({{"i", bond.i}, {"j", bond.j}, {"J_MHz", bond.J / kTwoPi}});
    }
    doc["bonds"] = bonds;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write lattice config: " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace bhmelt
