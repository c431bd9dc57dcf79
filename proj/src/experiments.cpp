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

#include "bhmelt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "bhmelt/csv.hpp"
#include "bhmelt/dynamics.hpp"
#include "bhmelt/errors.hpp"
#include "bhmelt/observables.hpp"
#include "bhmelt/parallel.hpp"
#include "bhmelt/readout.hpp"
#include "bhmelt/rng.hpp"
#include "bhmelt/spectrum.hpp"
#include "bhmelt/state.hpp"
#include "bhmelt/tonks.hpp"

namespace bhmelt {

namespace {

int model_n_max(int N) { return std::min(N, 3); }

const char* stagger_name(Stagger stagger) {
  return stagger == Stagger::Large ? "large" : "small";
}

nlohmann::json manifest_base(const ExperimentOptions& options,
                             const std::string& experiment) {
  nlohmann::json j;
  j["tool"] = "bhmelt";
  j["experiment"] = experiment;
  j["seed"] = options.seed;
  j["threads"] = options.threads;
  j["lattice"]["L"] = options.lattice.L;
  j["lattice"]["mean_J_rad_per_us"] = mean_J(options.lattice);
  j["lattice"]["tunneling_cycle_us"] = tunneling_cycle_us(options.lattice);
  return j;
}

void write_manifest(const ExperimentOptions& options, nlohmann::json j) {
  std::filesystem::create_directories(options.out_dir);
  std::ofstream out(options.out_dir / "manifest.json", std::ios::binary);
  if (!out) throw Error("cannot write manifest");
  out << j.dump(2) << '\n';
}

// Ground state of the ordered lattice in the attractive convention: the top
// eigenstate of the fixed-N sector.
StateVector ordered_fluid_state(const ExperimentOptions& options,
                                const BasisSet& basis) {
  HamiltonianMatrix H = build_hamiltonian(
      options.lattice, basis, Eigen::VectorXd::Zero(options.lattice.L));
  SpectrumSlice slice = diagonalize(H);
  return make_state(basis,
                    Eigen::VectorXd(slice.eigenvectors.rightCols(1)));
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (n < 1 || lo <= 0.0 || hi < lo) {
    throw ParameterError("invalid sweep range");
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  if (n == 1) {
    values[0] = lo;
    return values;
  }
  double ratio = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    values[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
  }
  return values;
}

}  // namespace

FockState standard_preparation(int L, int N, int q) {
  if (L != 7) {
    throw ParameterError("standard preparations are defined for seven sites");
  }
  FockState fock(static_cast<std::size_t>(L), 0);
  if (N == 1 && q == 1) {
    fock[5] = 1;
  } else if (N == 1 && q == 2) {
    fock[3] = 1;
  } else if (N == 2 && q == 1) {
    fock[3] = fock[5] = 1;
  } else if (N == 3 && q == 1) {
    fock[1] = fock[3] = fock[5] = 1;
  } else if (N == 4 && q == 1) {
    fock[1] = fock[3] = fock[5] = fock[6] = 1;
  } else {
    throw ParameterError("no standard preparation for N=" + std::to_string(N) +
                         ", q=" + std::to_string(q));
  }
  return fock;
}

void run_spectrum(const ExperimentOptions& options, int N, int n_slices,
                  Stagger stagger) {
  BasisSet basis =
      enumerate_basis(options.lattice.L, model_n_max(N), Sector::fixed_n(N));
  FockState fock = standard_preparation(options.lattice.L, N);
  AdiabaticTrack track =
      track_eigenstate(options.lattice, basis, stagger, fock, n_slices);
  std::vector<SpectrumSlice> slices =
      band_spectrum(options.lattice, basis, stagger, n_slices);

  std::filesystem::create_directories(options.out_dir);
  CsvWriter csv(options.out_dir / "spectrum.csv",
                "s,index,energy_rad_per_us,overlap_with_tracked");
  for (std::size_t k = 0; k < slices.size(); ++k) {
    const SpectrumSlice& slice = slices[k];
    Eigen::VectorXd tracked = track.vectors.col(static_cast<Eigen::Index>(k));
    for (int idx = 0; idx < slice.energies.size(); ++idx) {
      double overlap = slice.eigenvectors.col(idx).dot(tracked);
      csv.field(slice.s)
          .field(idx)
          .field(slice.energies[idx])
          .field(overlap * overlap);
      csv.end_row();
    }
  }

  nlohmann::json j = manifest_base(options, "spectrum");
  j["parameters"] = {{"N", N},
                     {"n_slices", n_slices},
                     {"stagger", stagger_name(stagger)}};
  j["anchor_overlap_sq"] = track.anchor_overlap_sq;
  j["tracked_final_index"] = track.slices.back().index;
  j["tracked_final_energy_rad_per_us"] = track.slices.back().energy;
  j["outputs"] = {"spectrum.csv"};
  write_manifest(options, j);
}

void run_melt(const ExperimentOptions& options, int N, int q,
              double t_ramp_cycles, int n_samples, double dt_divisor) {
  if (n_samples < 2) throw ParameterError("need at least two samples");
  BasisSet basis =
      enumerate_basis(options.lattice.L, model_n_max(N), Sector::fixed_n(N));
  FockState fock = standard_preparation(options.lattice.L, N, q);
  double t_ramp_us = t_ramp_cycles * tunneling_cycle_us(options.lattice);

  std::vector<double> times(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    times[static_cast<std::size_t>(k)] = t_ramp_us * k / (n_samples - 1);
  }
  PropagatorSettings settings;
  settings.dt_divisor = dt_divisor;
  MeltResult result =
      melt(fock, options.lattice, basis, t_ramp_us, times, Stagger::Small,
           settings);

  std::filesystem::create_directories(options.out_dir);
  CsvWriter csv(options.out_dir / "density.csv", "t_us,site,n");
  for (const SamplePoint& sample : result.samples) {
    Eigen::VectorXd n = density(sample.state);
    for (int i = 0; i < options.lattice.L; ++i) {
      csv.field(sample.t_us).field(i).field(n[i]);
      csv.end_row();
    }
  }

  nlohmann::json j = manifest_base(options, "melt");
  j["parameters"] = {{"N", N},
                     {"q", q},
                     {"t_ramp_cycles", t_ramp_cycles},
                     {"t_ramp_us", t_ramp_us},
                     {"n_samples", n_samples},
                     {"dt_divisor", dt_divisor}};
  j["anchor_overlap_sq"] = result.anchor_overlap_sq;
  j["outputs"] = {"density.csv"};
  write_manifest(options, j);
}

void run_reversibility(const ExperimentOptions& options, int N, int q,
                       int n_points, double t_min_cycles, double t_max_cycles,
                       double t_hold_cycles, bool lossy, int n_trajectories,
                       double dt_divisor) {
  FockState fock = standard_preparation(options.lattice.L, N, q);
  double cycle = tunneling_cycle_us(options.lattice);
  std::vector<double> sweep = log_spaced(t_min_cycles, t_max_cycles, n_points);
  PropagatorSettings settings;
  settings.dt_divisor = dt_divisor;

  BasisSet closed_basis =
      enumerate_basis(options.lattice.L, model_n_max(N), Sector::fixed_n(N));
  std::vector<ReversibilityResult> closed(sweep.size());
  parallel_for(static_cast<int>(sweep.size()), options.threads, [&](int i) {
    closed[static_cast<std::size_t>(i)] = reversibility(
        fock, options.lattice, closed_basis, sweep[static_cast<std::size_t>(i)] * cycle,
        t_hold_cycles * cycle, Stagger::Small, settings);
  });

  std::filesystem::create_directories(options.out_dir);
  CsvWriter csv(options.out_dir / "reversibility.csv",
                "t_ramp_cycles,t_ramp_us,overlap_fidelity,"
                "occupation_return_probability");
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    csv.field(sweep[i])
        .field(sweep[i] * cycle)
        .field(closed[i].overlap_fidelity)
        .field(closed[i].occupation_return_probability);
    csv.end_row();
  }

  nlohmann::json j = manifest_base(options, "reversibility");
  j["parameters"] = {{"N", N},
                     {"q", q},
                     {"n_points", n_points},
                     {"t_min_cycles", t_min_cycles},
                     {"t_max_cycles", t_max_cycles},
                     {"t_hold_cycles", t_hold_cycles},
                     {"lossy", lossy},
                     {"n_trajectories", n_trajectories},
                     {"dt_divisor", dt_divisor}};
  j["outputs"] = {"reversibility.csv"};

  if (lossy) {
    BasisSet lossy_basis = enumerate_basis(
        options.lattice.L, model_n_max(N), Sector::energy_restricted(N));
    CsvWriter lossy_csv(options.out_dir / "lossy.csv",
                        "t_ramp_cycles,t_ramp_us,ensemble_fidelity,mean_jumps");
    AnchorResult anchor = anchored_eigenstate(
        options.lattice, lossy_basis,
        options.lattice.stagger(Stagger::Small), fock, 0.95);
    StateVector psi0 = make_state(lossy_basis, anchor.vector);
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      double t_ramp_us = sweep[i] * cycle;
      RampSchedule schedule = boomerang_schedule(
          options.lattice, t_ramp_us, t_hold_cycles * cycle, Stagger::Small);
      LossyEnsemble ensemble = evolve_lossy(
          psi0, options.lattice, schedule, n_trajectories,
          derive_seed(options.seed, static_cast<std::uint64_t>(i)), settings,
          options.threads);
      double mean_jumps = 0.0;
      for (int jumps : ensemble.jump_counts) mean_jumps += jumps;
      mean_jumps /= static_cast<double>(ensemble.jump_counts.size());
      lossy_csv.field(sweep[i])
          .field(t_ramp_us)
          .field(ensemble_fidelity(ensemble, psi0))
          .field(mean_jumps);
      lossy_csv.end_row();
    }
    j["outputs"].push_back("lossy.csv");
  }
  write_manifest(options, j);
}

void run_fluid(const ExperimentOptions& options, int N) {
  BasisSet basis =
      enumerate_basis(options.lattice.L, model_n_max(N), Sector::fixed_n(N));
  StateVector fluid = ordered_fluid_state(options, basis);
  Eigen::VectorXd n = density(fluid);
  Eigen::VectorXd oracle = free_fermion_density(options.lattice, N);

  std::filesystem::create_directories(options.out_dir);
  CsvWriter csv(options.out_dir / "fluid_density.csv",
                "site,n,n_free_fermion");
  for (int i = 0; i < options.lattice.L; ++i) {
    csv.field(i).field(n[i]).field(oracle[i]);
    csv.end_row();
  }

  nlohmann::json j = manifest_base(options, "fluid");
  j["parameters"] = {{"N", N}};
  j["global_entanglement"] = global_entanglement(fluid);
  j["outputs"] = {"fluid_density.csv"};
  write_manifest(options, j);
}

void run_g2(const ExperimentOptions& options, int N) {
  BasisSet basis =
      enumerate_basis(options.lattice.L, model_n_max(N), Sector::fixed_n(N));
  StateVector fluid = ordered_fluid_state(options, basis);
  Eigen::VectorXd g2 = pair_correlation(fluid);
  Eigen::VectorXd g2_oracle = free_fermion_g2(options.lattice, N);
  double nbar = static_cast<double>(N) / options.lattice.L;

  std::filesystem::create_directories(options.out_dir);
  auto write = [&](const std::filesystem::path& name,
                   const Eigen::VectorXd& values) {
    CsvWriter csv(options.out_dir / name, "x,g2,x_rescaled");
    for (int x = 0; x < values.size(); ++x) {
      csv.field(x).field(values[x]).field(x * nbar);
      csv.end_row();
    }
  };
  write("g2.csv", g2);
  write("g2_oracle.csv", g2_oracle);

  FriedelFit fit = friedel_fit(g2, nbar);
  nlohmann::json j = manifest_base(options, "g2");
  j["parameters"] = {{"N", N}};
  j["friedel"] = {{"k", fit.k},
                  {"amplitude", fit.amplitude},
                  {"residual", fit.residual},
                  {"oscillating", fit.oscillating},
                  {"k_expected", std::numbers::pi * nbar}};
  j["outputs"] = {"g2.csv", "g2_oracle.csv"};
  write_manifest(options, j);
}

void run_conditional(const ExperimentOptions& options, int N, int focus_site) {
  if (focus_site < 0 || focus_site >= options.lattice.L) {
    throw ParameterError("focus site out of range");
  }
  BasisSet basis =
      enumerate_basis(options.lattice.L, model_n_max(N), Sector::fixed_n(N));
  StateVector fluid = ordered_fluid_state(options, basis);
  Eigen::MatrixXd P = conditional_probability(fluid);

  std::filesystem::create_directories(options.out_dir);
  CsvWriter csv(options.out_dir / "pij.csv", "i,j,p");
  for (int jcol = 0; jcol < options.lattice.L; ++jcol) {
    for (int i = 0; i < options.lattice.L; ++i) {
      csv.field(i).field(jcol).field(P(i, jcol));
      csv.end_row();
    }
  }

  nlohmann::json j = manifest_base(options, "conditional");
  j["parameters"] = {{"N", N}, {"j", focus_site}};
  j["max_doublon_weight"] = P.diagonal().maxCoeff();
  j["outputs"] = {"pij.csv"};
  write_manifest(options, j);
}

void run_entanglement(const ExperimentOptions& options, int N, int n_slices) {
  BasisSet basis =
      enumerate_basis(options.lattice.L, model_n_max(N), Sector::fixed_n(N));
  FockState fock = standard_preparation(options.lattice.L, N);
  AdiabaticTrack down =
      track_eigenstate(options.lattice, basis, Stagger::Small, fock, n_slices);
  std::vector<double> up_grid(down.slices.size());
  for (std::size_t k = 0; k < down.slices.size(); ++k) {
    up_grid[k] = down.slices[down.slices.size() - 1 - k].s;
  }
  AdiabaticTrack up = continue_track(
      options.lattice, basis, Stagger::Small,
      Eigen::VectorXd(down.vectors.rightCols(1)), up_grid);

  std::size_t n = down.slices.size();
  std::vector<double> egl(n), egl_reverse(n);
  parallel_for(static_cast<int>(n), options.threads, [&](int k) {
    std::size_t sk = static_cast<std::size_t>(k);
    egl[sk] = global_entanglement(
        make_state(basis, Eigen::VectorXd(down.vectors.col(k))));
    egl_reverse[sk] = global_entanglement(make_state(
        basis,
        Eigen::VectorXd(up.vectors.col(static_cast<Eigen::Index>(n - 1 - sk)))));
  });

  std::filesystem::create_directories(options.out_dir);
  CsvWriter csv(options.out_dir / "egl.csv", "s,egl,egl_reverse");
  for (std::size_t k = 0; k < n; ++k) {
    csv.field(down.slices[k].s).field(egl[k]).field(egl_reverse[k]);
    csv.end_row();
  }

  double min_increment = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < n; ++k) {
    min_increment = std::min(min_increment, egl[k] - egl[k - 1]);
  }
  double max_retrack_dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    max_retrack_dev = std::max(max_retrack_dev,
                               std::abs(egl[k] - egl_reverse[k]));
  }

  nlohmann::json j = manifest_base(options, "entanglement");
  j["parameters"] = {{"N", N}, {"n_slices", n_slices}};
  j["anchor_overlap_sq"] = down.anchor_overlap_sq;
  j["egl_initial"] = egl.front();
  j["egl_final"] = egl.back();
  j["min_increment"] = min_increment;
  j["max_retrack_deviation"] = max_retrack_dev;
  j["outputs"] = {"egl.csv"};
  write_manifest(options, j);
}

void run_readout_demo(const ExperimentOptions& options, int N, int n_shots,
                      int n_repeats) {
  if (n_shots < 1 || n_repeats < 2) {
    throw ParameterError("need n_shots >= 1 and n_repeats >= 2");
  }
  int L = options.lattice.L;
  BasisSet basis = enumerate_basis(L, 1, Sector::fixed_n(N));
  StateVector fluid = ordered_fluid_state(options, basis);
  Eigen::VectorXd p_state = fluid.amplitudes.cwiseAbs2();
  Eigen::VectorXd n_exact = density(fluid);

  Eigen::VectorXd fidelities = device_readout_fidelities();
  if (fidelities.size() != L) {
    throw ParameterError("readout fidelity table does not match lattice size");
  }
  std::vector<ConfusionMatrix> confusions;
  confusions.reserve(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) {
    confusions.push_back(symmetric_confusion(fidelities[i]));
  }

  int n_outcomes = 1 << L;
  std::vector<std::vector<long>> counts(
      static_cast<std::size_t>(n_repeats),
      std::vector<long>(static_cast<std::size_t>(n_outcomes), 0));
  std::vector<Eigen::VectorXd> estimates(static_cast<std::size_t>(n_repeats));

  parallel_for(n_repeats, options.threads, [&](int r) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    std::vector<long>& bins = counts[static_cast<std::size_t>(r)];
    for (int shot = 0; shot < n_shots; ++shot) {
      double u = rng.uniform();
      double acc = 0.0;
      Eigen::Index outcome_state = p_state.size() - 1;
      for (Eigen::Index k = 0; k < p_state.size(); ++k) {
        acc += p_state[k];
        if (u < acc) {
          outcome_state = k;
          break;
        }
      }
      const FockState& s = basis.states[static_cast<std::size_t>(outcome_state)];
      int word = 0;
      for (int i = 0; i < L; ++i) {
        bool bit = s[static_cast<std::size_t>(i)] > 0;
        if (rng.uniform() < 1.0 - fidelities[i]) bit = !bit;
        if (bit) word |= 1 << i;
      }
      ++bins[static_cast<std::size_t>(word)];
    }
    Eigen::VectorXd fraction(L);
    for (int i = 0; i < L; ++i) {
      long excited = 0;
      for (int w = 0; w < n_outcomes; ++w) {
        if ((w >> i) & 1) excited += bins[static_cast<std::size_t>(w)];
      }
      fraction[i] = static_cast<double>(excited) / n_shots;
    }
    estimates[static_cast<std::size_t>(r)] =
        corrected_site_occupations(confusions, fraction);
  });

  std::filesystem::create_directories(options.out_dir);
  CsvWriter shots_csv(options.out_dir / "shots.csv", "repeat,outcome,count");
  for (int r = 0; r < n_repeats; ++r) {
    for (int w = 0; w < n_outcomes; ++w) {
      long c = counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(w)];
      if (c == 0) continue;
      shots_csv.field(r).field(w).field(static_cast<std::int64_t>(c));
      shots_csv.end_row();
    }
  }

  CsvWriter density_csv(options.out_dir / "densities.csv",
                        "site,n_exact,n_estimated,sem");
  double max_abs_z = 0.0;
  for (int i = 0; i < L; ++i) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_repeats));
    for (int r = 0; r < n_repeats; ++r) {
      values.push_back(estimates[static_cast<std::size_t>(r)][i]);
    }
    RepeatStatistics stats = repeat_statistics(values);
    density_csv.field(i).field(n_exact[i]).field(stats.mean).field(stats.sem);
    density_csv.end_row();
    if (stats.sem > 0.0) {
      max_abs_z =
          std::max(max_abs_z, std::abs(stats.mean - n_exact[i]) / stats.sem);
    }
  }

  nlohmann::json j = manifest_base(options, "readout-demo");
  j["parameters"] = {{"N", N}, {"n_shots", n_shots}, {"n_repeats", n_repeats}};
  j["max_abs_z"] = max_abs_z;
  j["outputs"] = {"shots.csv", "densities.csv"};
  write_manifest(options, j);
}

}  // namespace bhmelt
