// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "qswitch/open_dynamics.hpp"
#include "qswitch/quantum_core.hpp"
#include "qswitch/switch_model.hpp"

using namespace qswitch;

namespace {

// Reference propagation through the dense superoperator, kept independent
// of the dispatch logic inside evolve().
DensityMatrix propagate_dense(const LindbladGenerator& g,
                              const DensityMatrix& rho, double t) {
  const int d = g.dim();
  Matrix prop = (superoperator(g) * t).exp();
  Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(rho.mat.data(), d * d);
  Eigen::VectorXcd yt = prop * y;
  Matrix out = Eigen::Map<const Matrix>(yt.data(), d, d);
  return DensityMatrix{hermitize(out), rho.space};
}

DensityMatrix sector_mixture(const SwitchParams& p, double w_plus) {
  DensityMatrix a = biased_gibbs(p, Sector::plus).rho;
  DensityMatrix b = biased_gibbs(p, Sector::minus).rho;
  return DensityMatrix{w_plus * a.mat + (1.0 - w_plus) * b.mat, a.space};
}

}  // namespace

TEST_CASE("bath validation rejects bad parameters") {
  BathSpec b;
  b.kT = 0.5;
  CHECK_NOTHROW(b.validate());
  BathSpec bad = b;
  bad.kT = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = b;
  bad.gamma_o = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = b;
  bad.spectral_form = "ohmic";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("generator validation catches broken pieces") {
  SwitchParams p;
  p.D = 0.8;
  p.omega0 = 1.0;
  p.kT = 0.5;
  p.cutoff = 8;
  BathSpec b;
  b.kT = 0.5;

  LindbladGenerator g = build_generator(p, b, true);
  CHECK_NOTHROW(g.validate());

  LindbladGenerator bad = g;
  bad.hamiltonian(0, 1) += Cx(0.0, 0.3);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = g;
  bad.jumps[0].second = -0.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = g;
  bad.jumps[0].first = Matrix::Zero(3, 3);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  // A larger space goes through the sampled trace-preservation check.
  SwitchParams p2 = p;
  p2.cutoff = 14;
  CHECK_NOTHROW(build_generator(p2, b, true).validate());
}

TEST_CASE("both relaxed states are stationary when flips are off") {
  SwitchParams p;
  p.D = 1.0;
  p.omega0 = 1.0;
  p.kT = 0.25;
  p.cutoff = 26;  // the displaced-state truncation error must sit below 1e-10
  BathSpec b;
  b.kT = 0.25;
  LindbladGenerator g = build_generator(p, b, false);
  for (Sector s : {Sector::plus, Sector::minus}) {
    Matrix resid = generator_action(g, biased_gibbs(p, s).rho.mat);
    CHECK(trace_norm(resid) < 1e-8);
  }
}

TEST_CASE("decoupled sector reduces to the damped oscillator") {
  // With the wells at the origin the pointer is a plain thermal oscillator:
  // a coherent amplitude spirals in at half the net damping rate while the
  // oscillation picks up the exact Hamiltonian phase.
  SwitchParams p;
  p.D = 0.0;
  p.omega0 = 1.0;
  p.kT = 0.5;
  p.cutoff = 25;
  BathSpec b;
  b.kT = 0.5;
  b.gamma_o = 0.4;
  LindbladGenerator g = build_generator(p, b, false);

  Cx alpha(1.5, 0.0);
  StateVector spin_up{Vector::Zero(2), SpaceSpec{{2}}};
  spin_up.amp[0] = 1.0;
  StateVector psi = tensor(spin_up, coherent_state(alpha, p.cutoff));
  DensityMatrix rho0 = density_from_state(psi);

  Matrix a_full = kron(Matrix::Identity(2, 2), annihilation(p.cutoff));
  double kappa = b.gamma_o * (1.0 - std::exp(-p.omega0 / b.kT));

  for (double t : {1.0, 3.0}) {
    DensityMatrix rho = evolve(g, rho0, t, 0.004);
    Cx amp = (a_full * rho.mat).trace();
    Cx expected = alpha * std::exp(Cx(-0.5 * kappa * t, -p.omega0 * t));
    CHECK(std::abs(amp - expected) < 2e-6 * std::abs(expected));
  }

  // Long-time limit: the sector thermalizes.
  DensityMatrix late = evolve(g, rho0, 100.0, 0.004);
  SwitchState tagged{late, Sector::plus};
  DensityMatrix marg = pointer_marginal(tagged);
  DensityMatrix th = thermal_oscillator(mean_occupation(p.omega0, b.kT), p.cutoff);
  CHECK(trace_distance(marg, th) < 1e-6);
}

TEST_CASE("two-level closed form through the dense path") {
  double omega = 1.3, g_down = 0.7, g_up = 0.25;
  LindbladGenerator g;
  g.space = SpaceSpec{{2}};
  g.hamiltonian = Matrix::Zero(2, 2);
  g.hamiltonian(1, 1) = omega;
  Matrix lower = Matrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  g.jumps = {{lower, g_down}, {lower.adjoint(), g_up}};

  Matrix m(2, 2);
  m << 0.2, 0.25, 0.25, 0.8;
  DensityMatrix rho0{m, g.space};

  double big_gamma = g_down + g_up;
  double p_eq = g_up / big_gamma;
  for (double t : {0.3, 2.0}) {
    DensityMatrix rho = evolve(g, rho0, t, 0.05);
    double pe = std::real(rho.mat(1, 1));
    double pe_ref = p_eq + (0.8 - p_eq) * std::exp(-big_gamma * t);
    CHECK(pe == doctest::Approx(pe_ref).epsilon(1e-9));
    Cx coh_ref = 0.25 * std::exp(Cx(-0.5 * big_gamma * t, omega * t));
    CHECK(std::abs(rho.mat(0, 1) - coh_ref) < 1e-9);
  }
}

TEST_CASE("population path matches the dense propagator") {
  SwitchParams p;
  p.D = 0.45;
  p.omega0 = 1.0;
  p.kT = 0.5;
  p.cutoff = 10;  // dimension 20 forces the non-dense dispatch
  BathSpec b;
  b.kT = 0.5;
  b.gamma_o = 1.0;
  b.gamma_1 = 0.3;
  LindbladGenerator g = build_generator(p, b, true);

  DensityMatrix rho0 = sector_mixture(p, 0.35);
  double t = 1.7;
  DensityMatrix via_api = evolve(g, rho0, t, 0.005);
  DensityMatrix via_expm = propagate_dense(g, rho0, t);
  CHECK(trace_distance(via_api, via_expm) < 1e-8);
}

TEST_CASE("interaction picture matches the dense propagator") {
  SwitchParams p;
  p.D = 0.45;
  p.omega0 = 1.0;
  p.kT = 0.5;
  p.cutoff = 10;
  BathSpec b;
  b.kT = 0.5;
  b.gamma_o = 1.0;
  b.gamma_1 = 0.3;
  LindbladGenerator g = build_generator(p, b, true);

  // A displaced coherent state carries coherences in the eigenbasis.
  StateVector spin_up{Vector::Zero(2), SpaceSpec{{2}}};
  spin_up.amp[0] = 1.0;
  StateVector psi = tensor(spin_up, coherent_state(0.4, p.cutoff));
  DensityMatrix rho0 = density_from_state(psi);
  double t = 1.3;
  DensityMatrix via_api = evolve(g, rho0, t, 0.005);
  DensityMatrix via_expm = propagate_dense(g, rho0, t);
  CHECK(trace_distance(via_api, via_expm) < 1e-7);

  // The relaxed-state cat puts coherence inside a degenerate level pair;
  // populations alone cannot carry it, so the full integrator must run.
  auto [gp, gm] = ground_states(p);
  Vector cat_amp = (gp.amp + gm.amp) / std::sqrt(2.0);
  DensityMatrix cat{cat_amp * cat_amp.adjoint(), gp.space};
  DensityMatrix cat_api = evolve(g, cat, t, 0.005);
  DensityMatrix cat_expm = propagate_dense(g, cat, t);
  CHECK(trace_distance(cat_api, cat_expm) < 1e-7);
}

TEST_CASE("generic fallback handles a non-ladder jump") {
  SwitchParams p;
  p.D = 0.0;
  p.omega0 = 1.0;
  p.kT = 0.5;
  p.cutoff = 10;
  BathSpec b;
  b.kT = 0.5;
  b.gamma_o = 0.5;
  LindbladGenerator g = build_generator(p, b, false);
  // Mixing two ladder steps in one operator spoils the single-frequency
  // structure the interaction-picture path requires.
  Matrix a = annihilation(p.cutoff);
  Matrix mixed = kron(Matrix::Identity(2, 2), Matrix(a + 0.3 * a * a));
  g.jumps.emplace_back(mixed, 0.2);

  StateVector spin_up{Vector::Zero(2), SpaceSpec{{2}}};
  spin_up.amp[0] = 1.0;
  StateVector psi = tensor(spin_up, coherent_state(0.5, p.cutoff));
  DensityMatrix rho0 = density_from_state(psi);
  double t = 0.9;
  DensityMatrix via_api = evolve(g, rho0, t, 0.004);
  DensityMatrix via_expm = propagate_dense(g, rho0, t);
  CHECK(trace_distance(via_api, via_expm) < 1e-7);
}

TEST_CASE("zero elapsed time returns the input") {
  SwitchParams p;
  p.D = 0.6;
  p.omega0 = 1.0;
  p.kT = 0.5;
  p.cutoff = 14;
  BathSpec b;
  b.kT = 0.5;
  LindbladGenerator g = build_generator(p, b, false);
  DensityMatrix rho0 = biased_gibbs(p, Sector::plus).rho;
  DensityMatrix rho = evolve(g, rho0, 0.0, 1e-3);
  CHECK((rho.mat - rho0.mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bad arguments are rejected") {
  SwitchParams p;
  p.D = 0.6;
  p.omega0 = 1.0;
  p.kT = 0.5;
  p.cutoff = 14;
  BathSpec b;
  b.kT = 0.5;
  b.gamma_o = 2.0;
  LindbladGenerator g = build_generator(p, b, false);
  DensityMatrix rho0 = biased_gibbs(p, Sector::plus).rho;
  CHECK_THROWS_AS(evolve(g, rho0, -1.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(evolve(g, rho0, 1.0, 0.0), std::invalid_argument);
  // A step that cannot resolve the fastest decay channel.
  CHECK_THROWS_AS(evolve(g, rho0, 1.0, 50.0), std::invalid_argument);
  DensityMatrix small{Matrix::Identity(3, 3) / 3.0, SpaceSpec{{3}}};
  CHECK_THROWS_AS(evolve(g, small, 1.0, 0.01), std::invalid_argument);
}

TEST_CASE("stationary state is the joint thermal state with flips on") {
  SwitchParams p;
  p.D = 0.9;
  p.omega0 = 1.0;
  p.kT = 0.6;
  p.cutoff = 7;  // dense-kernel route
  BathSpec b;
  b.kT = 0.6;
  b.gamma_1 = 0.2;
  LindbladGenerator g = build_generator(p, b, true);
  DensityMatrix st = stationary_state(g);
  DensityMatrix gibbs = gibbs_state(build_hamiltonian(p), p.kT, st.space);
  CHECK(trace_distance(st, gibbs) < 1e-6);

  SwitchParams p_big = p;
  p_big.cutoff = 18;  // population route
  LindbladGenerator g_big = build_generator(p_big, b, true);
  DensityMatrix st_big = stationary_state(g_big);
  DensityMatrix gibbs_big =
      gibbs_state(build_hamiltonian(p_big), p_big.kT, st_big.space);
  CHECK(trace_distance(st_big, gibbs_big) < 1e-6);
}

TEST_CASE("stationary state is not unique with flips off") {
  SwitchParams p;
  p.D = 0.9;
  p.omega0 = 1.0;
  p.kT = 0.6;
  p.cutoff = 7;
  BathSpec b;
  b.kT = 0.6;
  CHECK_THROWS_AS(stationary_state(build_generator(p, b, false)),
                  std::invalid_argument);
  SwitchParams p_big = p;
  p_big.cutoff = 18;
  CHECK_THROWS_AS(stationary_state(build_generator(p_big, b, false)),
                  std::invalid_argument);
}

TEST_CASE("detailed-balance rates attach to raising and lowering parts") {
  SwitchParams p;
  p.D = 0.0;
  p.omega0 = 1.0;
  p.kT = 0.7;
  p.cutoff = 6;
  BathSpec b;
  b.kT = 0.7;
  b.gamma_o = 0.9;
  LindbladGenerator g = build_generator(p, b, false);
  REQUIRE(g.jumps.size() == 2);

  Matrix a_full = kron(Matrix::Identity(2, 2), annihilation(p.cutoff));
  double down_rate = -1.0, up_rate = -1.0;
  for (const auto& [op, rate] : g.jumps) {
    if ((op.cwiseAbs() - a_full.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-10)
      down_rate = rate;
    if ((op.cwiseAbs() - a_full.adjoint().cwiseAbs()).cwiseAbs().maxCoeff() <
        1e-10)
      up_rate = rate;
  }
  REQUIRE(down_rate > 0.0);
  REQUIRE(up_rate > 0.0);
  CHECK(down_rate == doctest::Approx(b.gamma_o).epsilon(1e-12));
  CHECK(up_rate ==
        doctest::Approx(b.gamma_o * std::exp(-p.omega0 / b.kT)).epsilon(1e-12));
}

TEST_CASE("relaxation heat equals the biased-well energy drop") {
  SwitchParams p;
  p.D = 1.0;
  p.omega0 = 1.0;
  p.kT = 0.25;
  BathSpec b;
  b.kT = 0.25;
  double q = relaxation_heat(p, b);
  CHECK(q == doctest::Approx(4.0).epsilon(0.01));

  SwitchParams flat = p;
  flat.D = 0.0;
  CHECK(std::abs(relaxation_heat(flat, b)) < 1e-9);

  BathSpec wrong = b;
  wrong.kT = 0.3;
  CHECK_THROWS_AS(relaxation_heat(p, wrong), std::invalid_argument);
}

TEST_CASE("flip lifetime shows thermal activation") {
  BathSpec b;
  b.kT = 0.125;
  b.gamma_o = 1.0;
  b.gamma_1 = 0.02;

  SwitchParams flat;
  flat.D = 0.0;
  flat.omega0 = 1.0;
  flat.kT = 0.125;
  LifetimeEstimate base = estimate_lifetime(flat, b);
  CHECK(base.tau / base.tau0 == doctest::Approx(1.0).epsilon(0.05));
  CHECK(base.tau0 == doctest::Approx(1.0 / (2.0 * b.gamma_1)).epsilon(0.05));
  CHECK_FALSE(base.flagged);

  SwitchParams p;
  p.D = 0.7;
  p.omega0 = 1.0;
  p.kT = 0.125;
  LifetimeEstimate est = estimate_lifetime(p, b);
  double arrhenius = std::exp(barrier_energy(p) / noise_temperature(p));
  CHECK(est.tau / est.tau0 / arrhenius == doctest::Approx(1.0).epsilon(0.2));
  CHECK(est.fit_error < kLifetimeFitThreshold);

  BathSpec wrong = b;
  wrong.kT = 0.2;
  CHECK_THROWS_AS(estimate_lifetime(p, wrong), std::invalid_argument);
  BathSpec cold = b;
  cold.kT = 0.0;
  SwitchParams pc = p;
  pc.kT = 0.0;
  CHECK_THROWS_AS(estimate_lifetime(pc, cold), std::invalid_argument);
}

TEST_CASE("arbitrary states settle into the relaxed mixture") {
  // Scaled-down version of the long-run relaxation: the weights of the two
  // wells are preserved, coherences die, and the end point is the matching
  // mixture of the two relaxed states.
  SwitchParams p;
  p.D = 0.8;
  p.omega0 = 1.0;
  p.kT = 0.25;
  p.cutoff = 18;
  BathSpec b;
  b.kT = 0.25;
  b.gamma_o = 1.0;
  LindbladGenerator g = build_generator(p, b, false);

  auto [gp, gm] = ground_states(p);
  Vector cat_amp = (gp.amp + gm.amp) / std::sqrt(2.0);
  DensityMatrix cat{cat_amp * cat_amp.adjoint(), gp.space};

  Matrix sz = kron(pauli_z(), Matrix::Identity(p.cutoff, p.cutoff));
  double w_plus = 0.5 * (1.0 + expectation(sz, cat));
  DensityMatrix target = sector_mixture(p, w_plus);

  DensityMatrix late = evolve(g, cat, 30.0 / b.gamma_o, 0.002);
  CHECK(trace_distance(late, target) < 1e-5);
  CHECK(std::real(late.mat.trace()) == doctest::Approx(1.0).epsilon(1e-9));
}
