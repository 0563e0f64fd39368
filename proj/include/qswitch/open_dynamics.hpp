// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Weak-coupling (Davies) master equation for the switch: generator
// construction from the bath couplings, trajectory integration, stationary
// states, relaxation heat, and the pointer-lifetime estimate.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qswitch/quantum_core.hpp"
#include "qswitch/switch_model.hpp"

namespace qswitch {

// Bath parameters. Rates are the flat-profile decay rates; absorption at
// Bohr frequency O carries the detailed-balance factor exp(-O/kT).
struct BathSpec {
  double kT = 1.0;
  double gamma_o = 1.0;   // oscillator (position) coupling rate
  double gamma_1 = 0.05;  // spin-flip coupling rate
  std::string spectral_form = "flat-kms";

  void validate() const;
};

// Hamiltonian plus weighted jump operators. rate multiplies the dissipator
// D[A](rho) = A rho A^dag - {A^dag A, rho}/2.
struct LindbladGenerator {
  Matrix hamiltonian;
  std::vector<std::pair<Matrix, double>> jumps;
  SpaceSpec space;

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
  // Checks Hermiticity of H, non-negative rates, and trace preservation
  // (exactly when dim <= 16 via superoperator column sums, sampled above).
  void validate(double tol = 1e-10) const;
};

struct LifetimeEstimate {
  double tau = 0.0;
  double tau0 = 0.0;
  double fit_error = 0.0;  // rms residual of the log-linear tail fit
  bool flagged = false;    // fit_error above kLifetimeFitThreshold
};

inline constexpr double kLifetimeFitThreshold = 0.05;

// Davies generator for the switch in contact with a thermal bath. Jump
// operators are eigenoperators of the truncated Hamiltonian obtained by
// decomposing the position coupling (a + a^dag) and, when requested, the
// spin coupling sigma_x; emission/absorption rates obey the KMS ratio at
// every Bohr frequency. kT = 0 keeps only decay eigenoperators.
LindbladGenerator build_generator(const SwitchParams& p, const BathSpec& b,
                                  bool include_spin_flip);

// Action of the generator on a state: L(rho).
Matrix generator_action(const LindbladGenerator& g, const Matrix& rho);

// Dense superoperator in the column-major vec convention,
// vec(A rho B) = (B^T (x) A) vec(rho). Intended for small dimensions.
Matrix superoperator(const LindbladGenerator& g);

// Propagates rho0 for time t. dt must resolve the fastest dissipative rate
// (dt * max_rate < 0.1, checked); internally the step is adaptive, with an
// exact exponential path at small dimension and an interaction-picture
// integrator for eigenoperator generators. Trace and Hermiticity are
// monitored along the trajectory at 1e-8.
DensityMatrix evolve(const LindbladGenerator& g, const DensityMatrix& rho0,
                     double t, double dt);

// Stationary state of the generator (null space of L), normalized.
DensityMatrix stationary_state(const LindbladGenerator& g);

// Energy released to the bath when the flipped state relaxes back to the
// biased Gibbs state, with the spin-flip coupling off.
double relaxation_heat(const SwitchParams& p, const BathSpec& b);

// Pointer lifetime: prepare the relaxed plus-sector state, evolve with the
// spin-flip coupling on, and fit the exponential tail of <sigma_z>(t).
// tau0 is the same estimate at D = 0.
LifetimeEstimate estimate_lifetime(const SwitchParams& p, const BathSpec& b);

}  // namespace qswitch
