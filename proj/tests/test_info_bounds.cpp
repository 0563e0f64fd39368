// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qswitch/info_bounds.hpp"
#include "qswitch/quantum_core.hpp"
#include "qswitch/switch_model.hpp"
#include "qswitch/util.hpp"

using namespace qswitch;

namespace {

DensityMatrix pure_qubit(const Vector& amp) {
  Vector v = amp / amp.norm();
  return DensityMatrix{v * v.adjoint(), SpaceSpec{{2}}};
}

Ensemble orthogonal_pair() {
  Vector up(2), down(2);
  up << 1.0, 0.0;
  down << 0.0, 1.0;
  return Ensemble{{pure_qubit(up), pure_qubit(down)}, {0.5, 0.5}};
}

}  // namespace

TEST_CASE("encode work values and the barrier identity") {
  CHECK(encode_work(std::exp(-1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  // Hot limit: the noise temperature approaches kT and the cost becomes
  // the classical kT ln(1/eps).
  SwitchParams hot;
  hot.D = 1.0;
  hot.omega0 = 1.0;
  hot.kT = 100.0;
  double theta_hot = noise_temperature(hot);
  CHECK(encode_work(0.1, theta_hot) ==
        doctest::Approx(hot.kT * std::log(10.0)).epsilon(1e-4));

  // The encoding cost of the switch's own error probability is exactly its
  // barrier height.
  SwitchParams p;
  p.D = 1.2;
  p.omega0 = 1.0;
  p.kT = 0.3;
  CHECK(encode_work(overlap_analytic(p), noise_temperature(p)) ==
        doctest::Approx(barrier_energy(p)).epsilon(1e-12));

  CHECK_THROWS_AS(encode_work(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(encode_work(0.7, 1.0), std::invalid_argument);
}

TEST_CASE("lifetime bound and the activation identity") {
  CHECK(max_lifetime(0.5, 3.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(max_lifetime(0.01, 1.0) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(std::isinf(max_lifetime(0.0, 1.0)));
  CHECK_THROWS_AS(max_lifetime(-0.1, 1.0), std::invalid_argument);

  // tau0 * exp(W/theta) equals tau0/eps when eps = exp(-W/theta).
  double theta = 0.8, w = 1.7, tau0 = 2.5;
  double eps = std::exp(-w / theta);
  CHECK(tau0 * std::exp(w / theta) ==
        doctest::Approx(max_lifetime(eps, tau0)).epsilon(1e-12));

  // The two bounds are the same statement: W = theta ln(tau_max/tau0).
  for (double e = 0.01; e <= 0.5; e += 0.035) {
    CHECK(encode_work(e, theta) ==
          doctest::Approx(theta * std::log(max_lifetime(e, tau0) / tau0))
              .epsilon(1e-12));
  }
}

TEST_CASE("computation cost against the Landauer baseline") {
  BoundReport two = computation_cost(2.0, 1.0, 1.0);
  CHECK(two.value == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-15));

  BoundReport big = computation_cost(1e20, 1.0, 1.0);
  CHECK(big.ratio == doctest::Approx(46.051701859880914).epsilon(1e-12));

  // The bound survives T -> 0, where the baseline vanishes: the noise
  // temperature floors at half the level spacing.
  SwitchParams cold;
  cold.D = 1.0;
  cold.omega0 = 1.0;
  cold.kT = 0.0;
  BoundReport frozen = computation_cost(1e6, noise_temperature(cold), 0.0);
  CHECK(frozen.value ==
        doctest::Approx(0.5 * 1e6 * std::log(1e6)).epsilon(1e-12));
  CHECK(std::isinf(frozen.ratio));

  // Tighter confidence costs more.
  BoundReport confident = computation_cost(100.0, 1.0, 1.0, 0.01);
  CHECK(confident.value ==
        doctest::Approx(100.0 * (std::log(100.0) + std::log(100.0)))
            .epsilon(1e-12));

  // Superlinearity: per-step cost grows with the step count.
  double prev = computation_cost(2.0, 1.0, 1.0).value / 2.0;
  for (double n : {10.0, 1e3, 1e6, 1e12}) {
    double per_step = computation_cost(n, 1.0, 1.0).value / n;
    CHECK(per_step > prev);
    prev = per_step;
  }

  CHECK_THROWS_AS(computation_cost(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("holevo quantity on reference ensembles") {
  CHECK(holevo_bound(orthogonal_pair()) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-12));

  Vector up(2);
  up << 1.0, 0.0;
  Ensemble single{{pure_qubit(up)}, {1.0}};
  CHECK(holevo_bound(single) == doctest::Approx(0.0));

  // Four equally spaced equatorial states average to the mixed state.
  Ensemble equator;
  for (int k = 0; k < 4; ++k) {
    double phi = 0.5 * std::numbers::pi * k;
    Vector v(2);
    v << 1.0, std::polar(1.0, phi);
    equator.states.push_back(pure_qubit(v));
    equator.probabilities.push_back(0.25);
  }
  CHECK(holevo_bound(equator) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("ensemble validation") {
  Ensemble e = orthogonal_pair();
  CHECK_NOTHROW(e.validate());
  Ensemble bad = e;
  bad.probabilities = {0.5, 0.6};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = e;
  bad.probabilities = {1.5, -0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = e;
  bad.probabilities = {0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = e;
  bad.states[1] = maximally_mixed(3);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  Ensemble empty;
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}

TEST_CASE("noisy holevo quantity and its cap") {
  Ensemble pair = orthogonal_pair();

  NoisyHolevo clean = noisy_holevo_bound(pair, 0.0);
  CHECK(clean.chi == doctest::Approx(holevo_bound(pair)).epsilon(1e-12));

  NoisyHolevo scrambled = noisy_holevo_bound(pair, 0.5);
  CHECK(std::abs(scrambled.chi) < 1e-12);

  // Orthogonal pair at eps = 0.1: the noisy states have spectra (0.9, 0.1)
  // and the average stays maximally mixed, so all three numbers coincide.
  NoisyHolevo nh = noisy_holevo_bound(pair, 0.1);
  CHECK(nh.chi == doctest::Approx(0.3680642071684971).epsilon(1e-12));
  CHECK(nh.entropy_difference == doctest::Approx(nh.chi).epsilon(1e-12));
  CHECK(nh.bound == doctest::Approx(nh.chi).epsilon(1e-12));

  // Non-qubit and mixed-state inputs are rejected.
  Ensemble qutrit{{maximally_mixed(3), maximally_mixed(3)}, {0.5, 0.5}};
  CHECK_THROWS_AS(noisy_holevo_bound(qutrit, 0.1), std::invalid_argument);
  Ensemble mixed{{maximally_mixed(2), maximally_mixed(2)}, {0.5, 0.5}};
  CHECK_THROWS_AS(noisy_holevo_bound(mixed, 0.1), std::invalid_argument);
}

TEST_CASE("readout noise only ever shrinks the capacity") {
  GaussianRng rng(0x1f0bdca11);
  for (int trial = 0; trial < 40; ++trial) {
    int count = 2 + static_cast<int>(rng.uniform() * 3.0);
    Ensemble e;
    double total = 0.0;
    std::vector<double> raw;
    for (int j = 0; j < count; ++j) {
      Vector v(2);
      v << Cx(rng.normal(), rng.normal()), Cx(rng.normal(), rng.normal());
      e.states.push_back(pure_qubit(v));
      double w = rng.uniform() + 0.1;
      raw.push_back(w);
      total += w;
    }
    for (double w : raw) e.probabilities.push_back(w / total);
    // Rescale away the rounding drift so validate() is exact.
    double s = 0.0;
    for (double w : e.probabilities) s += w;
    for (double& w : e.probabilities) w /= s;

    double prev = holevo_bound(e);
    CHECK(prev <= std::numbers::ln2 + 1e-12);
    CHECK(prev >= -1e-12);
    for (double eps : {0.05, 0.1, 0.2, 0.4}) {
      NoisyHolevo nh = noisy_holevo_bound(e, eps);
      CHECK(nh.chi <= prev + 1e-12);
      CHECK(nh.chi <= nh.bound + 1e-12);
      CHECK(nh.chi >= -1e-12);
      prev = nh.chi;
    }
  }
}

TEST_CASE("double well bookkeeping") {
  double kT = 1.0;
  DoubleWellReport report = double_well_demo(kT);
  CHECK(report.entropy == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  CHECK(report.decomposition_distance < 1e-12);
  CHECK(report.extractable_work ==
        doctest::Approx(kT * std::numbers::ln2).epsilon(1e-12));
  CHECK(report.free_energy_excess ==
        doctest::Approx(kT * std::numbers::ln2).epsilon(1e-9));
  CHECK_THROWS_AS(double_well_demo(1e-7, 1e-8), std::invalid_argument);
}

TEST_CASE("information and physical entropy split the bit exactly") {
  Ensemble pair = orthogonal_pair();
  for (double eps = 0.02; eps < 0.5; eps += 0.06) {
    NoisyHolevo nh = noisy_holevo_bound(pair, eps);
    CHECK(std::abs(nh.bound + binary_entropy(eps) - std::numbers::ln2) <
          1e-12);
  }
}
