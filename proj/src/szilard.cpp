// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include "qswitch/szilard.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qswitch/util.hpp"

namespace qswitch {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Level energies at control field f for splitting E0: the level measured
// as occupied stays pinned near zero while the other is raised.
struct Levels {
  double up, down;
};

Levels levels_at(double f, double E0) {
  return {0.5 * E0 * (f * f - f), 0.5 * E0 * (f * f + f)};
}

// Gibbs populations (p_up, p_down) for the two levels at temperature T.
std::pair<double, double> gibbs_populations(Levels lv, double T) {
  // Subtract the smaller level before exponentiating for stability.
  double base = std::min(lv.up, lv.down);
  double wu = std::exp(-(lv.up - base) / T);
  double wd = std::exp(-(lv.down - base) / T);
  return {wu / (wu + wd), wd / (wu + wd)};
}

}  // namespace

void EngineConfig::validate() const {
  require(E0 >= 0.0, "EngineConfig: E0 must be >= 0");
  require(eps >= 0.0 && eps <= 0.5, "EngineConfig: eps must lie in [0, 1/2]");
  require(T > 0.0, "EngineConfig: T must be > 0");
  require(ramp_steps >= 2, "EngineConfig: ramp_steps must be >= 2");
}

double cycle_work_ideal(double E0, double T) {
  require(E0 >= 0.0, "cycle_work_ideal: E0 must be >= 0");
  require(T > 0.0, "cycle_work_ideal: T must be > 0");
  return T * (std::numbers::ln2 - std::log1p(std::exp(-E0 / T)));
}

double cycle_work_faulty(double E0, double eps, double T) {
  require(eps >= 0.0 && eps <= 0.5,
          "cycle_work_faulty: eps must lie in [0, 1/2]");
  return cycle_work_ideal(E0, T) - eps * E0;
}

OptimalWork optimal_work(double eps, double T) {
  require(eps >= 0.0 && eps <= 0.5, "optimal_work: eps must lie in [0, 1/2]");
  require(T > 0.0, "optimal_work: T must be > 0");
  if (eps == 0.0)
    return {std::numeric_limits<double>::infinity(), T * std::numbers::ln2};
  return {T * std::log((1.0 - eps) / eps),
          T * (std::numbers::ln2 - binary_entropy(eps))};
}

double efficiency(double eps, double T, double theta) {
  require(eps >= 0.0 && eps <= 0.5, "efficiency: eps must lie in [0, 1/2]");
  require(T > 0.0, "efficiency: T must be > 0");
  require(theta > 0.0, "efficiency: theta must be > 0");
  if (eps == 0.0 || eps == 0.5) return 0.0;
  return (T / theta) * (std::numbers::ln2 - binary_entropy(eps)) /
         (-std::log(eps));
}

EfficiencyPoint max_efficiency(double T, double theta) {
  require(T > 0.0, "max_efficiency: T must be > 0");
  require(theta > 0.0, "max_efficiency: theta must be > 0");
  auto eta = [&](double e) { return efficiency(e, T, theta); };
  double eps_bar = golden_section_max(eta, 1e-9, 0.5 - 1e-9);
  return {eps_bar, eta(eps_bar)};
}

CycleLedger simulate_cycle(const EngineConfig& cfg) {
  cfg.validate();
  const double T = cfg.T;

  // Step i: zero field, equilibrium is the even mixture at zero energy.
  // Step ii: projective measurement; by symmetry the two outcomes give
  // identical ledgers, so follow outcome "up" and weight the branches.
  // Step iii: fast quench to full field. The level believed occupied stays
  // at zero energy; with probability eps the spin actually sits in the
  // raised level, so the field supplies E0 on that branch.
  double work_in = cfg.eps * cfg.E0;

  // Populations of the true ensemble state after the quench.
  double p_up = 1.0 - cfg.eps;
  double p_down = cfg.eps;

  // Reconnecting the bath relaxes the ensemble to the Gibbs state of the
  // full-field Hamiltonian; the energy change is pure heat.
  Levels lv = levels_at(1.0, cfg.E0);
  auto [g_up, g_down] = gibbs_populations(lv, T);
  double heat = (g_up - p_up) * lv.up + (g_down - p_down) * lv.down;
  p_up = g_up;
  p_down = g_down;

  // Step iv: ramp the field to zero through instantaneous Gibbs states,
  // with trapezoid work and heat increments. The two increments sum to
  // the exact energy difference of each step, so the first law closes to
  // rounding regardless of step count.
  double work_on = 0.0;
  const int n = cfg.ramp_steps;
  for (int k = 1; k <= n; ++k) {
    double f = 1.0 - static_cast<double>(k) / n;
    Levels nx = levels_at(f, cfg.E0);
    auto [n_up, n_down] = gibbs_populations(nx, T);
    work_on += 0.5 * ((p_up + n_up) * (nx.up - lv.up) +
                      (p_down + n_down) * (nx.down - lv.down));
    heat += 0.5 * ((n_up - p_up) * (nx.up + lv.up) +
                   (n_down - p_down) * (nx.down + lv.down));
    lv = nx;
    p_up = n_up;
    p_down = n_down;
  }

  CycleLedger ledger;
  ledger.work_in = work_in;
  ledger.work_out = -work_on;
  ledger.heat = heat;
  // The cycle ends where it started: zero Hamiltonian, even mixture.
  ledger.internal_energy_change = p_up * lv.up + p_down * lv.down;
  return ledger;
}

DensityMatrix cnot_measurement(const DensityMatrix& engine_spin,
                               const SwitchState& sw) {
  if (engine_spin.mat.rows() != 2 || engine_spin.mat.cols() != 2)
    throw std::invalid_argument("cnot_measurement: engine spin must be 2x2");
  if (std::abs(engine_spin.mat(0, 1)) > 1e-12)
    throw std::invalid_argument(
        "cnot_measurement: engine spin must be diagonal after measurement");
  const double p_up = std::real(engine_spin.mat(0, 0));
  const double p_down = std::real(engine_spin.mat(1, 1));

  const int sdim = sw.rho.mat.rows();
  const int osc = sdim / 2;
  Matrix flip = kron(pauli_x(), Matrix::Identity(osc, osc));
  Matrix flipped = flip * sw.rho.mat * flip;

  Matrix up_block = Matrix::Zero(2, 2);
  up_block(0, 0) = 1.0;
  Matrix down_block = Matrix::Zero(2, 2);
  down_block(1, 1) = 1.0;
  Matrix joint = p_up * kron(up_block, sw.rho.mat) +
                 p_down * kron(down_block, flipped);

  SpaceSpec space;
  space.dims = {2};
  space.dims.insert(space.dims.end(), sw.rho.space.dims.begin(),
                    sw.rho.space.dims.end());
  return DensityMatrix{std::move(joint), space};
}

}  // namespace qswitch
