// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form information-thermodynamic bounds: the work to encode a bit
// at error eps, the matching lifetime bound, the superlinear cost of long
// computations against the Landauer baseline, Holevo quantities for noisy
// readout, and the double-well entropy bookkeeping demonstration.

#pragma once

#include <vector>

#include "qswitch/quantum_core.hpp"

namespace qswitch {

struct Ensemble {
  std::vector<DensityMatrix> states;
  std::vector<double> probabilities;

  void validate() const;
};

// A bound value next to the Landauer-style reference it is compared with.
// ratio is value / landauer_reference, or +infinity when the reference
// vanishes (the zero-temperature comparison).
struct BoundReport {
  double value = 0.0;
  double landauer_reference = 0.0;
  double ratio = 0.0;
};

// The exact Holevo quantity of the depolarized ensemble, the looser
// difference between the clean average-state entropy and the flip entropy,
// and the closed-form cap ln2 - S(eps). The exact value never exceeds the
// cap; the middle expression is reported because the two coincide only for
// orthogonal pairs.
struct NoisyHolevo {
  double chi = 0.0;
  double entropy_difference = 0.0;
  double bound = 0.0;
};

struct DoubleWellReport {
  double entropy = 0.0;                 // of the equilibrium state
  double decomposition_distance = 0.0;  // localized vs eigenbasis mixture
  double extractable_work = 0.0;        // from a pure preparation
  double free_energy_excess = 0.0;      // of that preparation over equilibrium
};

// Work to encode one bit at error probability eps with noise temperature
// theta: theta * ln(1/eps). eps must lie in (0, 1/2].
double encode_work(double eps, double theta);

// Longest retention time of the encoded bit given the attempt time tau0:
// tau0 / eps. eps == 0 returns +infinity.
double max_lifetime(double eps, double tau0);

// Minimal work for a computation of n steps at confidence delta:
// theta * n * (ln n + ln(1/delta)). The report carries kT * n as the
// linear-in-n reference. n may be astronomically large, hence double.
BoundReport computation_cost(double n, double theta, double kT,
                             double delta = 1.0);

// S(average) minus average S: the capacity of the ensemble as a classical
// carrier.
double holevo_bound(const Ensemble& e);

// Holevo quantity after each pure qubit state passes through
// rho -> (1 - 2 eps) rho + eps * I.
NoisyHolevo noisy_holevo_bound(const Ensemble& e, double eps);

// Two-level double-well bookkeeping: near-degenerate eigenstates, their
// localized superpositions, and the equivalence of both unravelings of the
// equilibrium state. kT must dominate the tunneling splitting.
DoubleWellReport double_well_demo(double kT, double splitting = 1e-8);

}  // namespace qswitch
