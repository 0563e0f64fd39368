// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Two-level engine extracting work from a single bath through measurement
// and feedback. The control field f ramps the level splitting; measurement
// errors charge E0 on the mislabeled branch, which sets an optimal finite
// splitting and an efficiency maximum at finite error rate.

#pragma once

#include "qswitch/quantum_core.hpp"
#include "qswitch/switch_model.hpp"

namespace qswitch {

struct EngineConfig {
  double E0 = 1.0;        // level splitting at full field
  double eps = 0.0;       // measurement error probability, in [0, 1/2]
  double T = 1.0;         // bath temperature (k_B absorbed)
  int ramp_steps = 1000;  // discretization of the quasi-static ramp

  void validate() const;
};

// Energy bookkeeping for one ensemble-averaged cycle. work_in is supplied
// by the control field at the quench, work_out is extracted along the
// ramp, heat is the total taken from the bath; all are positive in the
// directions named. internal_energy_change closes the first law:
// dE = (work_in - work_out) + heat.
struct CycleLedger {
  double work_in = 0.0;
  double work_out = 0.0;
  double heat = 0.0;
  double internal_energy_change = 0.0;
};

struct OptimalWork {
  double E0_star = 0.0;  // +infinity when eps == 0
  double W_star = 0.0;
};

struct EfficiencyPoint {
  double eps_bar = 0.0;
  double eta_bar = 0.0;
};

// Work extracted per cycle with a perfect measurement:
// kT [ln 2 - ln(exp(-E0/kT) + 1)]. Monotone in E0, saturating at kT ln 2.
double cycle_work_ideal(double E0, double T);

// Net work with error probability eps: the ideal yield minus the eps*E0
// charged when the quench raises the occupied level.
double cycle_work_faulty(double E0, double eps, double T);

// Maximizer of cycle_work_faulty over E0 in closed form. For eps == 0 the
// optimum runs away; E0_star is reported as +infinity with W_star = kT ln2.
OptimalWork optimal_work(double eps, double T);

// Extracted work per invested switch work at error eps, temperature T and
// switch noise temperature theta. Vanishes at both ends of (0, 1/2).
double efficiency(double eps, double T, double theta);

// Scalar maximization of efficiency over the error probability.
EfficiencyPoint max_efficiency(double T, double theta);

// One full measure-quench-ramp cycle, branch-averaged, with trapezoid
// work/heat accounting along the discretized ramp.
CycleLedger simulate_cycle(const EngineConfig& cfg);

// Conditional flip of the switch on the engine spin: "up" (index 0) leaves
// the switch alone, "down" conjugates the switch factor by its spin flip.
// The engine state must be diagonal (post-measurement). The result lives
// on the engine-spin tensor switch space.
DensityMatrix cnot_measurement(const DensityMatrix& engine_spin,
                               const SwitchState& sw);

}  // namespace qswitch
