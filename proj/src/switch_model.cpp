// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qswitch/switch_model.hpp"

#include <cmath>

namespace qswitch {

void SwitchParams::validate() const {
  if (D < 0.0) throw std::invalid_argument("SwitchParams: D must be >= 0");
  if (omega0 <= 0.0) throw std::invalid_argument("SwitchParams: omega0 must be > 0");
  if (kT < 0.0) throw std::invalid_argument("SwitchParams: kT must be >= 0");
  if (cutoff != 0 && cutoff < 2) throw std::invalid_argument("SwitchParams: cutoff must be >= 2");
}

int SwitchParams::effective_cutoff() const { return cutoff > 0 ? cutoff : default_cutoff(*this); }

double mean_occupation(double omega0, double kT) {
  if (kT <= 0.0) return 0.0;
  return 1.0 / std::expm1(omega0 / kT);
}

int default_cutoff(const SwitchParams& p) {
  double n = p.D * p.D + 10.0 * p.D + 20.0 + 10.0 * mean_occupation(p.omega0, p.kT);
  return int(std::ceil(n));
}

Matrix build_hamiltonian(const SwitchParams& p) {
  p.validate();
  int n = p.effective_cutoff();
  Matrix a = annihilation(n);
  Matrix osc = number_operator(n);
  Matrix coord = a + a.adjoint();
  Matrix h = kron(Matrix::Identity(2, 2), osc) - p.D * kron(pauli_z(), coord);
  return p.omega0 * h;
}

std::pair<StateVector, StateVector> ground_states(const SwitchParams& p) {
  p.validate();
  int n = p.effective_cutoff();
  Vector up(2), down(2);
  up << 1, 0;
  down << 0, 1;
  StateVector spin_up{up, SpaceSpec{2}};
  StateVector spin_down{down, SpaceSpec{2}};
  auto plus = tensor(spin_up, coherent_state(p.D, n));
  auto minus = tensor(spin_down, coherent_state(-p.D, n));
  return {plus, minus};
}

void SwitchState::validate(double tol) const {
  rho.validate(1e-10, 1e-10, 1e-8);
  auto spin = partial_trace(rho, {0});
  int idx = sector == Sector::plus ? 0 : 1;
  Matrix proj = Matrix::Zero(2, 2);
  proj(idx, idx) = 1.0;
  double dev = (spin.mat - proj).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw std::invalid_argument("SwitchState: spin marginal off the labeled sector by " +
                                std::to_string(dev));
}

SwitchState biased_gibbs(const SwitchParams& p, Sector s) {
  p.validate();
  int n = p.effective_cutoff();
  double alpha = sector_sign(s) * p.D;

  DensityMatrix osc{Matrix(), SpaceSpec{n}};
  if (p.kT == 0.0) {
    osc = density_from_state(coherent_state(alpha, n));
  } else {
    // The coherent-state norm rule doubles as the cutoff-adequacy guard here.
    (void)coherent_state(alpha, n);
    Matrix d = displacement(alpha, n);
    auto thermal = thermal_oscillator(mean_occupation(p.omega0, p.kT), n);
    osc = DensityMatrix{hermitize(d * thermal.mat * d.adjoint()), SpaceSpec{n}};
  }

  int idx = s == Sector::plus ? 0 : 1;
  Matrix spin = Matrix::Zero(2, 2);
  spin(idx, idx) = 1.0;
  return SwitchState{tensor(DensityMatrix{spin, SpaceSpec{2}}, osc), s};
}

DensityMatrix pointer_marginal(const SwitchState& s) { return partial_trace(s.rho, {1}); }

double overlap_analytic(const SwitchParams& p) {
  p.validate();
  double thermal_factor = p.kT == 0.0 ? 1.0 : std::tanh(0.5 * p.omega0 / p.kT);
  return std::exp(-4.0 * p.D * p.D * thermal_factor);
}

double overlap_numeric(const SwitchParams& p) {
  p.validate();
  SwitchParams q = p;
  q.cutoff = p.effective_cutoff();
  double prev = 0.0;
  for (int round = 0;; ++round) {
    double eps = overlap(pointer_marginal(biased_gibbs(q, Sector::plus)),
                         pointer_marginal(biased_gibbs(q, Sector::minus)));
    if (round > 0 && std::abs(eps - prev) <= 1e-12 + 1e-8 * std::abs(eps)) return eps;
    if (round >= 6)
      throw std::runtime_error("overlap_numeric: no cutoff convergence by " +
                               std::to_string(q.cutoff) + " levels");
    prev = eps;
    q.cutoff *= 2;
  }
}

double noise_temperature(const SwitchParams& p) {
  p.validate();
  if (p.kT == 0.0) return 0.5 * p.omega0;
  return p.omega0 * (1.0 / std::expm1(p.omega0 / p.kT) + 0.5);
}

double barrier_energy(const SwitchParams& p) {
  p.validate();
  return 2.0 * p.D * p.D * p.omega0;
}

double mean_energy(const SwitchParams& p, const SwitchState& s) {
  return expectation(build_hamiltonian(p), s.rho);
}

SwitchState excited_state(const SwitchParams& p, Sector s) {
  auto relaxed = biased_gibbs(p, other(s));
  int n = p.effective_cutoff();
  Matrix flip = kron(pauli_x(), Matrix::Identity(n, n));
  return SwitchState{DensityMatrix{flip * relaxed.rho.mat * flip, relaxed.rho.space}, s};
}

GateResult not_gate(const SwitchParams& p, const SwitchState& s) {
  p.validate();
  int n = p.effective_cutoff();
  if (s.rho.mat.rows() != 2 * n)
    throw std::invalid_argument("not_gate: state dimension does not match params cutoff");
  Matrix flip = kron(pauli_x(), Matrix::Identity(n, n));
  SwitchState out{DensityMatrix{flip * s.rho.mat * flip, s.rho.space}, other(s.sector)};
  double work = mean_energy(p, out) - mean_energy(p, s);
  return GateResult{std::move(out), work};
}

}  // namespace qswitch
