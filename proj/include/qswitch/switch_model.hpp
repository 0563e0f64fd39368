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

#ifndef QSWITCH_SWITCH_MODEL_HPP
#define QSWITCH_SWITCH_MODEL_HPP

#include <utility>

#include "qswitch/quantum_core.hpp"

namespace qswitch {

// Spin-oscillator switch with H = omega0 [n - D (a + a^dag) sigma_z] in units
// hbar = k_B = 1. The two metastable wells sit at oscillator displacement
// +-D with the spin aligned along +-z. Temperatures are in energy units, so
// kT = 1 means k_B T = hbar omega0 when omega0 = 1.
struct SwitchParams {
  double D = 1.0;       // dimensionless well displacement, >= 0 (0 is the decoupled limit)
  double omega0 = 1.0;  // oscillator quantum
  double kT = 0.0;      // bath temperature (energy units)
  int cutoff = 0;       // oscillator levels; 0 selects default_cutoff()

  void validate() const;
  int effective_cutoff() const;
};

enum class Sector { plus, minus };

inline Sector other(Sector s) { return s == Sector::plus ? Sector::minus : Sector::plus; }
inline int sector_sign(Sector s) { return s == Sector::plus ? +1 : -1; }

// A switch density matrix on spin (x) oscillator, tagged with the well the
// spin marginal occupies.
struct SwitchState {
  DensityMatrix rho;
  Sector sector;

  // Checks the spin marginal is the labeled projector within tol.
  void validate(double tol = 1e-9) const;
};

// Planck occupation 1/(exp(omega0/kT) - 1); zero at kT = 0.
double mean_occupation(double omega0, double kT);

// ceil(D^2 + 10 D + 20 + 10 nbar): enough levels that truncation effects sit
// far below every tolerance used here.
int default_cutoff(const SwitchParams& p);

// omega0 [ I (x) n - D sigma_z (x) (a + a^dag) ] on spin (x) oscillator.
Matrix build_hamiltonian(const SwitchParams& p);

// Degenerate ground doublet |+>|+D> and |->|-D>, energy -omega0 D^2 each.
std::pair<StateVector, StateVector> ground_states(const SwitchParams& p);

// Well-restricted equilibrium state: spin projector tensored with the thermal
// oscillator displaced to +-D (displacement conjugation, exact on the
// truncated space). kT = 0 gives the pure ground state of the well.
SwitchState biased_gibbs(const SwitchParams& p, Sector s);

// Oscillator marginal of a switch state.
DensityMatrix pointer_marginal(const SwitchState& s);

// Squared-fidelity overlap of the two well states,
// exp(-4 D^2 tanh(omega0 / 2 kT)); the kT = 0 limit is exp(-4 D^2).
double overlap_analytic(const SwitchParams& p);

// Same overlap from the constructed pointer marginals, with the cutoff doubled
// until the value is stable to 1e-8 (relative, with a 1e-12 floor).
double overlap_numeric(const SwitchParams& p);

// Theta = omega0 [1/(exp(omega0/kT) - 1) + 1/2] = (omega0/2) coth(omega0/2kT).
double noise_temperature(const SwitchParams& p);

// W = 2 D^2 omega0, the energy paid at the halfway point of a switch flip.
double barrier_energy(const SwitchParams& p);

// Re Tr(H rho) under the switch Hamiltonian.
double mean_energy(const SwitchParams& p, const SwitchState& s);

// Spin flipped against the oscillator: sigma_x conjugation of the opposite
// well's biased Gibbs state. Its mean energy sits 4 D^2 omega0 above the
// relaxed well.
SwitchState excited_state(const SwitchParams& p, Sector s);

struct GateResult {
  SwitchState state;
  double work;  // mean-energy change paid by the driving
};

// Instantaneous bit flip (sigma_x (x) I conjugation). On a biased Gibbs input
// the invested work is 2 W = 4 D^2 omega0.
GateResult not_gate(const SwitchParams& p, const SwitchState& s);

}  // namespace qswitch

#endif  // QSWITCH_SWITCH_MODEL_HPP
