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

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bhmelt/errors.hpp"
#include "bhmelt/experiments.hpp"
#include "bhmelt/lattice.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFailure = 3;

struct CliState {
  std::string config_path;
  std::string lattice_path;
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  int threads = 1;
};

bhmelt::ExperimentOptions resolve_options(const CliState& cli,
                                          const CLI::App& app) {
  bhmelt::ExperimentOptions options;
  std::string lattice_path = cli.lattice_path;
  std::string out_dir = cli.out_dir;
  std::uint64_t seed = cli.seed;
  int threads = cli.threads;

  if (!cli.config_path.empty()) {
    std::ifstream in(cli.config_path);
    if (!in) {
      throw bhmelt::ConfigError("cannot open config: " + cli.config_path);
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw bhmelt::ConfigError("config parse failure: " +
                                std::string(e.what()));
    }
    for (const auto& [key, value] : doc.items()) {
      try {
        if (key == "lattice_file") {
          if (app.count("--lattice") == 0) {
            lattice_path = value.get<std::string>();
          }
        } else if (key == "seed") {
          if (app.count("--seed") == 0) seed = value.get<std::uint64_t>();
        } else if (key == "threads") {
          if (app.count("--threads") == 0) threads = value.get<int>();
        } else if (key == "out") {
          if (app.count("--out") == 0) out_dir = value.get<std::string>();
        } else {
          throw bhmelt::ConfigError("unknown config key: " + key);
        }
      } catch (const nlohmann::json::exception& e) {
        throw bhmelt::ConfigError("config schema failure: " +
                                  std::string(e.what()));
      }
    }
  }

  options.lattice = lattice_path.empty() ? bhmelt::device_lattice()
                                         : bhmelt::load_lattice(lattice_path);
  options.out_dir = out_dir;
  options.seed = seed;
  if (threads < 0) throw bhmelt::ConfigError("threads must be non-negative");
  options.threads = threads;
  return options;
}

bhmelt::Stagger parse_stagger(const std::string& name) {
  if (name == "small") return bhmelt::Stagger::Small;
  if (name == "large") return bhmelt::Stagger::Large;
  throw bhmelt::ConfigError("stagger must be 'small' or 'large'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seven-site attractive Bose-Hubbard lattice simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  CliState cli;
  app.add_option("--config", cli.config_path, "JSON run configuration file");
  app.add_option("--lattice", cli.lattice_path, "lattice parameter JSON file");
  app.add_option("--seed", cli.seed, "random seed")->capture_default_str();
  app.add_option("--threads", cli.threads,
                 "worker threads (0 = hardware concurrency)")->capture_default_str();
  app.add_option("--out", cli.out_dir, "output directory")->capture_default_str();

  int N = 3;
  int q = 1;
  int n_slices = 41;
  int n_samples = 61;
  int n_points = 20;
  int n_trajectories = 120;
  int n_shots = 2000;
  int n_repeats = 10;
  int focus_site = 3;
  double t_ramp = 20.0;
  double t_min = 1e-3;
  double t_max = 1e2;
  double t_hold = 0.0;
  double dt_divisor = 180.0;
  bool lossy = false;
  std::string stagger_str = "small";

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "fixed-N spectrum along the disorder ramp");
  spectrum->add_option("--N", N, "particle number")->capture_default_str();
  spectrum->add_option("--slices", n_slices, "ramp grid points")->capture_default_str();
  spectrum->add_option("--stagger", stagger_str, "small or large")->capture_default_str();

  CLI::App* melt_cmd = app.add_subcommand(
      "melt", "ramp the dressed initial state into the ordered lattice");
  melt_cmd->add_option("--N", N, "particle number")->capture_default_str();
  melt_cmd->add_option("--q", q, "N=1 preparation variant")->capture_default_str();
  melt_cmd->add_option("--t-ramp", t_ramp, "ramp time in tunneling cycles")->capture_default_str();
  melt_cmd->add_option("--samples", n_samples, "density samples")->capture_default_str();
  melt_cmd->add_option("--dt-divisor", dt_divisor, "integrator step divisor")->capture_default_str();

  CLI::App* rev = app.add_subcommand(
      "reversibility", "melt and ramp back, sweeping the ramp time");
  rev->add_option("--N", N, "particle number")->capture_default_str();
  rev->add_option("--q", q, "N=1 preparation variant")->capture_default_str();
  rev->add_option("--points", n_points, "sweep points")->capture_default_str();
  rev->add_option("--t-min", t_min, "shortest ramp, tunneling cycles")->capture_default_str();
  rev->add_option("--t-max", t_max, "longest ramp, tunneling cycles")->capture_default_str();
  rev->add_option("--t-hold", t_hold, "hold time at zero disorder, cycles")->capture_default_str();
  rev->add_flag("--lossy", lossy, "add photon-loss trajectory ensembles");
  rev->add_option("--trajectories", n_trajectories,
                  "trajectories per lossy point")->capture_default_str();
  rev->add_option("--dt-divisor", dt_divisor, "integrator step divisor")->capture_default_str();

  CLI::App* fluid = app.add_subcommand(
      "fluid", "ordered-lattice fluid state density");
  fluid->add_option("--N", N, "particle number")->capture_default_str();

  CLI::App* g2 = app.add_subcommand(
      "g2", "fluid pair correlations and oscillation fit");
  g2->add_option("--N", N, "particle number")->capture_default_str();

  CLI::App* conditional = app.add_subcommand(
      "conditional", "conditional occupation matrix of the fluid state");
  conditional->add_option("--N", N, "particle number")->capture_default_str();
  conditional->add_option("--j", focus_site, "conditioning site")->capture_default_str();

  CLI::App* entanglement = app.add_subcommand(
      "entanglement", "global entanglement along the adiabatic track");
  entanglement->add_option("--N", N, "particle number")->capture_default_str();
  entanglement->add_option("--slices", n_slices, "ramp grid points")->capture_default_str();

  CLI::App* readout = app.add_subcommand(
      "readout-demo", "finite-shot readout emulation with correction");
  readout->add_option("--N", N, "particle number")->capture_default_str();
  readout->add_option("--shots", n_shots, "shots per repeat")->capture_default_str();
  readout->add_option("--repeats", n_repeats, "independent repeats")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    bhmelt::ExperimentOptions options = resolve_options(cli, app);
    if (spectrum->parsed()) {
      bhmelt::run_spectrum(options, N, n_slices, parse_stagger(stagger_str));
    } else if (melt_cmd->parsed()) {
      bhmelt::run_melt(options, N, q, t_ramp, n_samples, dt_divisor);
    } else if (rev->parsed()) {
      bhmelt::run_reversibility(options, N, q, n_points, t_min, t_max, t_hold,
                                lossy, n_trajectories, dt_divisor);
    } else if (fluid->parsed()) {
      bhmelt::run_fluid(options, N);
    } else if (g2->parsed()) {
      bhmelt::run_g2(options, N);
    } else if (conditional->parsed()) {
      bhmelt::run_conditional(options, N, focus_site);
    } else if (entanglement->parsed()) {
      bhmelt::run_entanglement(options, N, n_slices);
    } else if (readout->parsed()) {
      bhmelt::run_readout_demo(options, N, n_shots, n_repeats);
    }
  } catch (const bhmelt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const bhmelt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
