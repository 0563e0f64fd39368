// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Internals shared by the generator builder and the integrators. Not part
// of the public API.

#pragma once

#include <utility>
#include <vector>

#include "qswitch/open_dynamics.hpp"
#include "qswitch/quantum_core.hpp"
#include "qswitch/switch_model.hpp"

namespace qswitch::detail {

// Frequency binning radius for grouping Bohr frequencies, in units of
// omega0, and the relative element threshold below which coupling matrix
// elements are treated as numerical noise. The bin must be wide enough to
// absorb eigensolver noise on genuinely equal spacings, yet narrow enough
// that no two physically distinct truncated-spectrum frequencies share a
// bin: a shared detailed-balance rate across a spread of width w leaves a
// stationarity residual of order rate * w / kT.
inline constexpr double kBinTol = 1e-11;
inline constexpr double kElementTol = 1e-13;

// Per-sector eigendecomposition of the switch Hamiltonian. Both spin
// couplings preserve the sector grading, so keeping the eigenbasis
// sector-pure (rather than letting a generic solver mix the cross-sector
// degenerate pairs) is what makes population-level reductions exact.
struct SectorSpectrum {
  int cutoff = 0;
  Eigen::VectorXd e_plus, e_minus;   // ascending eigenvalues, length cutoff
  Eigen::MatrixXd v_plus, v_minus;   // orthonormal eigenvector columns

  // Energies in global index order: sector + occupies [0, cutoff).
  Eigen::VectorXd energies() const;
  // Block-diagonal complex embedding of the eigenvector columns.
  Matrix embed() const;
};

SectorSpectrum switch_spectrum(const SwitchParams& p);

struct EigenOp {
  Matrix op;      // in the same basis as the input coupling
  double omega;   // Bohr frequency; op lowers energy by omega
};

// Splits a coupling operator, expressed in the Hamiltonian eigenbasis with
// the given energy vector, into eigenoperators grouped by Bohr frequency.
std::vector<EigenOp> decompose_coupling(const Matrix& coupling,
                                        const Eigen::VectorXd& energies,
                                        double bin_width, double element_tol);

// Flat-profile rate with the detailed-balance suppression on absorption.
// kT = 0 is the caller's responsibility (absorption ops are dropped there).
double kms_rate(double base_rate, double omega, double kT);

// Classical transition-rate matrix of eigenoperator jumps expressed in the
// eigenbasis: R(i, j) = sum_k rate_k |A_k(i,j)|^2 for i != j, diagonal
// = minus the column outflow. Populations evolve as p' = R p.
Eigen::MatrixXd pauli_rates(
    const std::vector<std::pair<Matrix, double>>& eigenbasis_jumps, int dim);

// Propagates p' = R p through the spectral decomposition of R, with a
// scaled matrix-exponential fallback when the eigenvector matrix is too
// ill-conditioned to reproduce R.
class PopulationPropagator {
 public:
  explicit PopulationPropagator(const Eigen::MatrixXd& r);

  Eigen::VectorXd at(const Eigen::VectorXd& p0, double t) const;
  // Observable sum_i weight_i p_i(t), cheap enough to sample densely.
  double observable(const Eigen::VectorXd& p0, const Eigen::VectorXd& weight,
                    double t) const;
  bool spectral_ok() const { return spectral_ok_; }

 private:
  Eigen::MatrixXd r_;
  bool spectral_ok_ = false;
  Eigen::MatrixXcd vecs_, vecs_inv_;
  Eigen::VectorXcd vals_;
};

}  // namespace qswitch::detail
