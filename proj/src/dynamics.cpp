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

#include "bhmelt/dynamics.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include "bhmelt/errors.hpp"
#include "bhmelt/hamiltonian.hpp"
#include "bhmelt/parallel.hpp"
#include "bhmelt/rng.hpp"
#include "bhmelt/spectrum.hpp"

namespace bhmelt {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

struct JumpOp {
  int site = 0;
  double gamma = 0.0;
  Eigen::SparseMatrix<Complex> op;
};

// Stochastic-jump state for one quantum trajectory. A negative threshold
// disables further jumps.
struct JumpContext {
  Rng* rng = nullptr;
  const std::vector<JumpOp>* ops = nullptr;
  double threshold = -1.0;
  int jumps = 0;
};

// One ramp segment in the frame shifted by the Gershgorin disc center.
struct SegmentContext {
  const Eigen::SparseMatrix<Complex>* K = nullptr;
  const Eigen::MatrixXd* occupation = nullptr;
  const Segment* segment = nullptr;
  const Eigen::VectorXd* loss_diag = nullptr;  // occupation * gamma1
  double center = 0.0;

  Eigen::VectorXcd diag_at(double t_local) const {
    Eigen::VectorXd d = (*occupation) * segment_disorder(*segment, t_local);
    Eigen::VectorXcd diag(d.size());
    if (loss_diag == nullptr) {
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        diag[i] = Complex(d[i] - center, 0.0);
      }
    } else {
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        diag[i] = Complex(d[i] - center, -0.5 * (*loss_diag)[i]);
      }
    }
    return diag;
  }
};

Eigen::VectorXcd schroedinger_rhs(const SegmentContext& ctx,
                                  const Eigen::VectorXcd& diag,
                                  const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y = (*ctx.K) * x;
  y.array() += diag.array() * x.array();
  return (-kI) * y;
}

void rk4_step(const SegmentContext& ctx, Eigen::VectorXcd& psi, double t0,
              double h) {
  Eigen::VectorXcd d0 = ctx.diag_at(t0);
  Eigen::VectorXcd dm = ctx.diag_at(t0 + 0.5 * h);
  Eigen::VectorXcd d1 = ctx.diag_at(t0 + h);
  Eigen::VectorXcd k1 = schroedinger_rhs(ctx, d0, psi);
  Eigen::VectorXcd k2 = schroedinger_rhs(ctx, dm, psi + (0.5 * h) * k1);
  Eigen::VectorXcd k3 = schroedinger_rhs(ctx, dm, psi + (0.5 * h) * k2);
  Eigen::VectorXcd k4 = schroedinger_rhs(ctx, d1, psi + h * k3);
  psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void maybe_jump(const SegmentContext& ctx, Eigen::VectorXcd& psi,
                JumpContext& jump) {
  if (jump.threshold < 0.0) return;
  double n2 = psi.squaredNorm();
  if (n2 > jump.threshold) return;

  Eigen::VectorXd prob = psi.cwiseAbs2();
  Eigen::VectorXd site_occupation = ctx.occupation->transpose() * prob;
  double total_rate = 0.0;
  for (const JumpOp& op : *jump.ops) {
    total_rate += op.gamma * site_occupation[op.site];
  }
  if (total_rate <= 0.0) {
    jump.threshold = -1.0;  // vacuum component only; decay has stopped
    return;
  }
  double r = jump.rng->uniform() * total_rate;
  const JumpOp* chosen = &jump.ops->back();
  double acc = 0.0;
  for (const JumpOp& op : *jump.ops) {
    acc += op.gamma * site_occupation[op.site];
    if (r < acc) {
      chosen = &op;
      break;
    }
  }
  psi = chosen->op * psi;
  double norm = psi.norm();
  if (norm <= 0.0) {
    throw PropagationError("jump produced a null state", 0.0);
  }
  psi /= norm;
  ++jump.jumps;
  jump.threshold = jump.rng->uniform();
}

double automatic_step(double duration, double radius,
                      const PropagatorSettings& settings) {
  double dt = duration / 1000.0;
  if (radius > 0.0) dt = std::min(dt, 1.0 / (settings.dt_divisor * radius));
  return std::min(dt, settings.max_step);
}

void integrate_span_fixed(const SegmentContext& ctx, Eigen::VectorXcd& psi,
                          double t0, double t1, double dt, JumpContext* jump) {
  double span = t1 - t0;
  if (span <= 0.0) return;
  int n_steps = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-12)));
  double h = span / n_steps;
  for (int k = 0; k < n_steps; ++k) {
    rk4_step(ctx, psi, t0 + k * h, h);
    if (jump != nullptr) maybe_jump(ctx, psi, *jump);
  }
}

void integrate_span_adaptive(const SegmentContext& ctx, Eigen::VectorXcd& psi,
                             double t0, double t1, double dt_init,
                             const PropagatorSettings& settings,
                             double global_offset, double total_duration) {
  double t = t0;
  double dt = std::min(dt_init, t1 - t0);
  double end_eps = 1e-15 * std::max(1.0, t1);
  while (t < t1 - end_eps) {
    dt = std::min(dt, t1 - t);
    if (dt < total_duration * 1e-14) {
      throw PropagationError("adaptive step size underflow",
                             global_offset + t);
    }
    Eigen::VectorXcd full = psi;
    rk4_step(ctx, full, t, dt);
    Eigen::VectorXcd half = psi;
    rk4_step(ctx, half, t, 0.5 * dt);
    rk4_step(ctx, half, t + 0.5 * dt, 0.5 * dt);
    double err = (half - full).norm();
    if (err <= settings.tolerance) {
      psi.swap(half);
      t += dt;
      double grow =
          err > 0.0 ? 0.9 * std::pow(settings.tolerance / err, 0.2) : 5.0;
      dt *= std::clamp(grow, 1.0, 5.0);
      dt = std::min(dt, settings.max_step);
    } else {
      dt *= std::clamp(0.9 * std::pow(settings.tolerance / err, 0.2), 0.2, 0.9);
    }
  }
}

// Shared propagation machinery: one Hamiltonian build serves all trajectories.
struct Engine {
  const LatticeConfig* config = nullptr;
  const BasisSet* basis = nullptr;
  SplitHamiltonian split;
  Eigen::SparseMatrix<Complex> K;
  Eigen::VectorXd loss_diag;  // empty when closed

  Engine(const LatticeConfig& cfg, const BasisSet& bas, bool with_loss)
      : config(&cfg), basis(&bas) {
    split = build_split_hamiltonian(cfg, bas);
    K = split.static_part.cast<Complex>();
    if (with_loss) loss_diag = split.occupation * cfg.gamma1;
  }

  void check_schedule(const RampSchedule& schedule) const {
    validate_schedule(schedule);
    for (const Segment& seg : schedule.segments) {
      if (seg.start_profile.size() != config->L ||
          seg.end_profile.size() != config->L) {
        throw ParameterError("schedule profile length does not match lattice");
      }
    }
  }

  Eigen::VectorXcd run(const Eigen::VectorXcd& psi0,
                       const RampSchedule& schedule,
                       const PropagatorSettings& settings,
                       const std::vector<double>* sample_times,
                       std::vector<SamplePoint>* samples_out,
                       JumpContext* jump) const {
    double total = schedule.total_duration();
    double eps = 1e-9 * std::max(1.0, total);
    std::size_t n_samples = sample_times ? sample_times->size() : 0;
    if (sample_times != nullptr) {
      for (std::size_t i = 0; i < n_samples; ++i) {
        double t = (*sample_times)[i];
        if (t < -eps || t > total + eps) {
          throw ParameterError("sample time outside the schedule");
        }
        if (i > 0 && t <= (*sample_times)[i - 1]) {
          throw ParameterError("sample times must be strictly increasing");
        }
      }
    }

    Eigen::VectorXcd psi = psi0;
    Complex phase = 1.0;
    double t_global = 0.0;
    std::size_t si = 0;
    auto record = [&](double t, const Eigen::VectorXcd& v, Complex extra) {
      SamplePoint point;
      point.t_us = std::clamp(t, 0.0, total);
      point.state.basis = basis;
      point.state.amplitudes = (phase * extra) * v;
      samples_out->push_back(std::move(point));
    };

    for (const Segment& seg : schedule.segments) {
      while (si < n_samples && (*sample_times)[si] <= t_global + eps) {
        record((*sample_times)[si], psi, 1.0);
        ++si;
      }
      if (seg.duration <= 0.0) continue;

      SpectralBounds b0 = gershgorin_bounds(split, segment_disorder(seg, 0.0));
      SpectralBounds b1 =
          gershgorin_bounds(split, segment_disorder(seg, seg.duration));
      SegmentContext ctx;
      ctx.K = &K;
      ctx.occupation = &split.occupation;
      ctx.segment = &seg;
      ctx.loss_diag = loss_diag.size() > 0 ? &loss_diag : nullptr;
      ctx.center = 0.5 * (std::min(b0.lo, b1.lo) + std::max(b0.hi, b1.hi));
      double radius = 0.5 * (std::max(b0.hi, b1.hi) - std::min(b0.lo, b1.lo));
      double dt = settings.fixed_dt > 0.0
                      ? settings.fixed_dt
                      : automatic_step(seg.duration, radius, settings);

      double prev = 0.0;
      while (true) {
        double next_off = seg.duration;
        bool at_sample = false;
        if (si < n_samples) {
          double cand = (*sample_times)[si] - t_global;
          if (cand < seg.duration - eps) {
            next_off = cand;
            at_sample = true;
          }
        }
        if (settings.mode == PropagatorSettings::Mode::Adaptive &&
            jump == nullptr) {
          integrate_span_adaptive(ctx, psi, prev, next_off, dt, settings,
                                  t_global, total);
        } else {
          integrate_span_fixed(ctx, psi, prev, next_off, dt, jump);
        }
        if (!at_sample) break;
        record((*sample_times)[si], psi, std::exp(-kI * ctx.center * next_off));
        ++si;
        prev = next_off;
      }
      phase *= std::exp(-kI * ctx.center * seg.duration);
      t_global += seg.duration;
    }
    while (si < n_samples) {
      record((*sample_times)[si], psi, 1.0);
      ++si;
    }

    psi *= phase;
    if (jump == nullptr) {
      double drift = std::abs(psi.norm() - psi0.norm());
      if (drift > 1e-6 * std::max(1.0, psi0.norm())) {
        throw PropagationError("norm drift exceeded tolerance", total);
      }
    }
    return psi;
  }
};

void check_state(const StateVector& psi0, const LatticeConfig& config) {
  if (psi0.basis == nullptr) throw ParameterError("state has no basis");
  if (psi0.basis->L != config.L) {
    throw ParameterError("state basis does not match the lattice size");
  }
  if (psi0.amplitudes.size() !=
      static_cast<Eigen::Index>(psi0.basis->states.size())) {
    throw ParameterError("state amplitudes do not match the basis dimension");
  }
}

bool same_occupied_sites(const FockState& a, const FockState& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] > 0) != (b[i] > 0)) return false;
  }
  return true;
}

}  // namespace

StateVector evolve(const StateVector& psi0, const LatticeConfig& config,
                   const RampSchedule& schedule,
                   const PropagatorSettings& settings) {
  check_state(psi0, config);
  Engine engine(config, *psi0.basis, false);
  engine.check_schedule(schedule);
  StateVector result;
  result.basis = psi0.basis;
  result.amplitudes =
      engine.run(psi0.amplitudes, schedule, settings, nullptr, nullptr, nullptr);
  return result;
}

std::vector<SamplePoint> evolve_sampled(const StateVector& psi0,
                                        const LatticeConfig& config,
                                        const RampSchedule& schedule,
                                        const std::vector<double>& sample_times,
                                        const PropagatorSettings& settings) {
  check_state(psi0, config);
  Engine engine(config, *psi0.basis, false);
  engine.check_schedule(schedule);
  std::vector<SamplePoint> samples;
  samples.reserve(sample_times.size());
  engine.run(psi0.amplitudes, schedule, settings, &sample_times, &samples,
             nullptr);
  return samples;
}

MeltResult melt(const FockState& initial_fock, const LatticeConfig& config,
                const BasisSet& basis, double t_ramp_us,
                const std::vector<double>& sample_times, Stagger stagger,
                const PropagatorSettings& settings, double anchor_threshold) {
  AnchorResult anchor = anchored_eigenstate(
      config, basis, config.stagger(stagger), initial_fock, anchor_threshold);
  StateVector psi0;
  psi0.basis = &basis;
  psi0.amplitudes = anchor.vector.cast<Complex>();

  RampSchedule schedule = melt_schedule(config, t_ramp_us, stagger);
  std::vector<double> times = sample_times;
  double total = schedule.total_duration();
  if (times.empty() || times.back() < total - 1e-9 * std::max(1.0, total)) {
    times.push_back(total);
  }
  MeltResult result;
  result.anchor_overlap_sq = anchor.overlap_sq;
  result.samples = evolve_sampled(psi0, config, schedule, times, settings);
  return result;
}

ReversibilityResult reversibility(const FockState& initial_fock,
                                  const LatticeConfig& config,
                                  const BasisSet& basis, double t_ramp_us,
                                  double t_hold_us, Stagger stagger,
                                  const PropagatorSettings& settings,
                                  double anchor_threshold) {
  AnchorResult anchor = anchored_eigenstate(
      config, basis, config.stagger(stagger), initial_fock, anchor_threshold);
  StateVector psi0;
  psi0.basis = &basis;
  psi0.amplitudes = anchor.vector.cast<Complex>();

  RampSchedule schedule =
      boomerang_schedule(config, t_ramp_us, t_hold_us, stagger);
  StateVector final_state = evolve(psi0, config, schedule, settings);

  ReversibilityResult result;
  result.anchor_overlap_sq = anchor.overlap_sq;
  Complex overlap = psi0.amplitudes.dot(final_state.amplitudes);
  result.overlap_fidelity = std::norm(overlap);
  double return_prob = 0.0;
  for (std::size_t k = 0; k < basis.states.size(); ++k) {
    if (same_occupied_sites(basis.states[k], initial_fock)) {
      return_prob += std::norm(final_state.amplitudes[static_cast<Eigen::Index>(k)]);
    }
  }
  result.occupation_return_probability = return_prob;
  return result;
}

LossyEnsemble evolve_lossy(const StateVector& psi0, const LatticeConfig& config,
                           const RampSchedule& schedule, int n_trajectories,
                           std::uint64_t seed,
                           const PropagatorSettings& settings, int n_threads) {
  check_state(psi0, config);
  if (n_trajectories < 1) {
    throw ParameterError("need at least one trajectory");
  }
  bool lossy = (config.gamma1.array() > 0.0).any();
  LossyEnsemble ensemble;
  ensemble.seed = seed;
  ensemble.states.resize(static_cast<std::size_t>(n_trajectories));
  ensemble.jump_counts.assign(static_cast<std::size_t>(n_trajectories), 0);

  if (!lossy) {
    StateVector final_state = evolve(psi0, config, schedule, settings);
    for (auto& slot : ensemble.states) slot = final_state;
    return ensemble;
  }
  if (psi0.basis->sector.kind == Sector::Kind::FixedN) {
    throw ParameterError(
        "photon loss leaves a fixed-N basis; use an occupation-capped or "
        "full basis");
  }

  Engine engine(config, *psi0.basis, true);
  engine.check_schedule(schedule);
  std::vector<JumpOp> ops;
  for (int site = 0; site < config.L; ++site) {
    if (config.gamma1[site] > 0.0) {
      JumpOp op;
      op.site = site;
      op.gamma = config.gamma1[site];
      op.op = annihilation_operator(*psi0.basis, site).cast<Complex>();
      ops.push_back(std::move(op));
    }
  }

  parallel_for(n_trajectories, n_threads, [&](int k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    JumpContext jump;
    jump.rng = &rng;
    jump.ops = &ops;
    jump.threshold = rng.uniform();
    Eigen::VectorXcd final_amps = engine.run(psi0.amplitudes, schedule,
                                             settings, nullptr, nullptr, &jump);
    double norm = final_amps.norm();
    if (norm <= 0.0) {
      throw PropagationError("trajectory norm vanished",
                             schedule.total_duration());
    }
    StateVector state;
    state.basis = psi0.basis;
    state.amplitudes = final_amps / norm;
    ensemble.states[static_cast<std::size_t>(k)] = std::move(state);
    ensemble.jump_counts[static_cast<std::size_t>(k)] = jump.jumps;
  });
  return ensemble;
}

double ensemble_fidelity(const LossyEnsemble& ensemble,
                         const StateVector& reference) {
  if (ensemble.states.empty()) {
    throw ParameterError("empty trajectory ensemble");
  }
  double sum = 0.0;
  for (const StateVector& state : ensemble.states) {
    check_same_basis(reference, state);
    sum += std::norm(reference.amplitudes.dot(state.amplitudes));
  }
  return sum / static_cast<double>(ensemble.states.size());
}

}  // namespace bhmelt
