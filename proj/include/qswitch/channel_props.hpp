// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Randomized property suite for the overlap axioms and their consequences:
// channels never decrease the overlap of two states, perfect cloning forces
// pairs to be identical or disjoint, and exact recovery from noise forces
// the noise to have preserved the overlap in the first place.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qswitch/quantum_core.hpp"

namespace qswitch {

struct QuantumChannel {
  // Kraus operators, all sharing one input and one output dimension
  // (possibly different from each other for isometric embeddings).
  std::vector<Matrix> kraus;

  int input_dim() const;
  int output_dim() const;
  // Throws unless the completeness sum equals the identity within tol.
  void validate(double tol = 1e-10) const;
};

struct SampleConfig {
  int dim = 2;
  int env_dim = 2;
  int count = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Per-sample margins from the axiom sweep. monotonicity_margin is
// overlap(T rho, T rho') - overlap(rho, rho'), which the contraction
// axiom requires to be nonnegative.
struct AxiomSample {
  std::uint64_t index = 0;
  double identity_error = 0.0;       // |overlap(rho, rho) - 1|
  double range_error = 0.0;          // excursion of overlap outside [0, 1]
  double factorization_error = 0.0;  // relative, on a random product pair
  double monotonicity_margin = 0.0;
};

struct AxiomReport {
  std::vector<AxiomSample> samples;
  double max_identity_error = 0.0;
  double max_range_error = 0.0;
  double max_factorization_error = 0.0;
  double min_monotonicity_margin = 0.0;
  int monotonicity_violations = 0;  // margins below -1e-9
};

struct CloneReport {
  double input_overlap = 0.0;
  double output_overlap = 0.0;
  // Largest trace distance of a cloner output from the exact replicated
  // product; zero means the pair is perfectly cloned.
  double deficit = 0.0;
  bool exact = false;
};

struct RecoveryLink {
  double f_in = 0.0;
  double f_noisy = 0.0;
  double f_recovered = 0.0;
  // Largest trace distance between recovery(noise(state)) and the state.
  double recovery_error = 0.0;
};

struct RecoveryReport {
  std::vector<RecoveryLink> links;
};

// The two-sided bound around the replicated-recovery overlap: the
// recovered overlap must sit between overlap^2 * overlap(sigma, sigma')
// and the bare overlap. product_deficit measures how far the recovered
// states are from the system-times-remainder product form.
struct ReplicatedRecovery {
  double f_in = 0.0;
  double f_out = 0.0;
  double lower_bound = 0.0;
  double product_deficit = 0.0;
};

// Hilbert-Schmidt random density matrix, deterministic in cfg.seed.
DensityMatrix random_density(const SampleConfig& cfg);

// Channel induced by a uniformly random isometry into system x environment
// with the environment traced out; env_dim = 1 gives a random unitary.
QuantumChannel random_channel(const SampleConfig& cfg);

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho);

// Measurement in the computational basis followed by preparation of two
// copies of the outcome state; the food factor is consumed.
QuantumChannel measure_copy_cloner(int dim, int food_dim);

// rho -> (1 - p) rho + p I/2 on a qubit.
QuantumChannel depolarizing_qubit(double p);

// Sweeps `count` sampled (state, state, channel) triples at cfg.dim with
// cfg.env_dim environment, recording identity, range, factorization and
// monotonicity margins. Deterministic in cfg.seed; samples are evaluated
// concurrently but reported in index order.
AxiomReport check_axioms(const SampleConfig& cfg);

// Runs the cloner on rho x food and rho' x food, measures how close the
// outputs are to exact replicas, and reports the overlaps on both ends of
// the contraction chain.
CloneReport cloning_chain(const DensityMatrix& rho,
                          const DensityMatrix& rho_prime,
                          const QuantumChannel& cloner,
                          const DensityMatrix& food);

// Applies noise then recovery to every pair, reporting the overlap chain
// and the recovery error.
RecoveryReport recovery_chain(const QuantumChannel& noise,
                              const QuantumChannel& recovery,
                              const std::vector<std::pair<DensityMatrix,
                                                          DensityMatrix>>& pairs);

// Replicated-input variant: noise and recovery act on system x system x
// remainder, and the recovered state is compared against the product of
// the original system state with an arbitrary rest.
ReplicatedRecovery replicated_recovery(const QuantumChannel& noise,
                                       const QuantumChannel& recovery,
                                       const DensityMatrix& rho,
                                       const DensityMatrix& rho_prime,
                                       const DensityMatrix& sigma,
                                       const DensityMatrix& sigma_prime);

}  // namespace qswitch
