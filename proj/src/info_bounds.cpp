// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include "qswitch/info_bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qswitch/szilard.hpp"

namespace qswitch {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

DensityMatrix average_state(const Ensemble& e) {
  Matrix avg = Matrix::Zero(e.states[0].mat.rows(), e.states[0].mat.cols());
  for (size_t j = 0; j < e.states.size(); ++j)
    avg += e.probabilities[j] * e.states[j].mat;
  return DensityMatrix{std::move(avg), e.states[0].space};
}

}  // namespace

void Ensemble::validate() const {
  require(!states.empty(), "Ensemble: needs at least one state");
  require(states.size() == probabilities.size(),
          "Ensemble: states and probabilities must pair up");
  double total = 0.0;
  for (double p : probabilities) {
    require(p >= 0.0, "Ensemble: probabilities must be >= 0");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12,
          "Ensemble: probabilities must sum to 1");
  const auto rows = states[0].mat.rows();
  for (const auto& s : states)
    require(s.mat.rows() == rows && s.mat.cols() == rows,
            "Ensemble: states must share one dimension");
}

double encode_work(double eps, double theta) {
  require(eps > 0.0 && eps <= 0.5, "encode_work: eps must lie in (0, 1/2]");
  require(theta > 0.0, "encode_work: theta must be > 0");
  return theta * std::log(1.0 / eps);
}

double max_lifetime(double eps, double tau0) {
  require(eps >= 0.0 && eps <= 0.5, "max_lifetime: eps must lie in [0, 1/2]");
  require(tau0 > 0.0, "max_lifetime: tau0 must be > 0");
  if (eps == 0.0) return std::numeric_limits<double>::infinity();
  return tau0 / eps;
}

BoundReport computation_cost(double n, double theta, double kT, double delta) {
  require(n >= 2.0, "computation_cost: n must be >= 2");
  require(theta > 0.0, "computation_cost: theta must be > 0");
  require(kT >= 0.0, "computation_cost: kT must be >= 0");
  require(delta > 0.0 && delta <= 1.0,
          "computation_cost: delta must lie in (0, 1]");
  BoundReport report;
  report.value = theta * n * (std::log(n) + std::log(1.0 / delta));
  report.landauer_reference = kT * n;
  report.ratio = report.landauer_reference > 0.0
                     ? report.value / report.landauer_reference
                     : std::numeric_limits<double>::infinity();
  return report;
}

double holevo_bound(const Ensemble& e) {
  e.validate();
  double chi = von_neumann_entropy(average_state(e));
  for (size_t j = 0; j < e.states.size(); ++j)
    chi -= e.probabilities[j] * von_neumann_entropy(e.states[j]);
  return chi;
}

NoisyHolevo noisy_holevo_bound(const Ensemble& e, double eps) {
  e.validate();
  require(eps >= 0.0 && eps <= 0.5,
          "noisy_holevo_bound: eps must lie in [0, 1/2]");
  require(e.states[0].mat.rows() == 2,
          "noisy_holevo_bound: ensemble must be qubit states");
  for (const auto& s : e.states) {
    double purity = std::real((s.mat * s.mat).trace());
    require(purity > 1.0 - 1e-10,
            "noisy_holevo_bound: ensemble members must be pure");
  }

  Ensemble noisy = e;
  for (auto& s : noisy.states)
    s.mat = (1.0 - 2.0 * eps) * s.mat + eps * Matrix::Identity(2, 2);

  NoisyHolevo out;
  out.chi = holevo_bound(noisy);
  out.entropy_difference =
      von_neumann_entropy(average_state(e)) - binary_entropy(eps);
  out.bound = std::numbers::ln2 - binary_entropy(eps);
  return out;
}

DoubleWellReport double_well_demo(double kT, double splitting) {
  require(splitting > 0.0, "double_well_demo: splitting must be > 0");
  require(kT >= 100.0 * splitting,
          "double_well_demo: kT must dominate the tunneling splitting");

  // Symmetric/antisymmetric doublet straddling zero energy.
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = -0.5 * splitting;
  h(1, 1) = +0.5 * splitting;
  SpaceSpec space{{2}};
  DensityMatrix eq = gibbs_state(h, kT, space);

  // Left/right superpositions of the doublet.
  Vector left(2), right(2);
  left << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  right << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  Matrix localized_mix =
      0.5 * (left * left.adjoint()) + 0.5 * (right * right.adjoint());
  Matrix eigen_mix = 0.5 * Matrix::Identity(2, 2);

  DoubleWellReport report;
  report.entropy = von_neumann_entropy(eq);
  report.decomposition_distance =
      trace_distance(DensityMatrix{localized_mix, space},
                     DensityMatrix{eigen_mix, space});
  report.extractable_work = optimal_work(0.0, kT).W_star;
  // A pure localized preparation has the equilibrium mean energy but no
  // entropy, so its free energy sits kT * S(eq) above equilibrium.
  double e_pure = std::real((left.adjoint() * h * left)(0));
  double e_eq = std::real((h * eq.mat).trace());
  report.free_energy_excess = (e_pure - e_eq) + kT * report.entropy;
  return report;
}

}  // namespace qswitch
