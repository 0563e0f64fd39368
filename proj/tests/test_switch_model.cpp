// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "qswitch/quantum_core.hpp"
#include "qswitch/switch_model.hpp"

using namespace qswitch;

namespace {

Matrix position_operator(int cutoff) {
  Matrix a = annihilation(cutoff);
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("hamiltonian is hermitian and block-structured") {
  SwitchParams p;
  p.D = 1.3;
  p.kT = 0.7;
  Matrix h = build_hamiltonian(p);
  const int n = p.effective_cutoff();
  REQUIRE(h.rows() == 2 * n);
  CHECK((h - h.adjoint()).norm() < 1e-12);
  // No spin-flip coupling: the off-diagonal 2x2 blocks vanish.
  CHECK(h.block(0, n, n, n).norm() == 0.0);
  CHECK(h.block(n, 0, n, n).norm() == 0.0);
}

TEST_CASE("decoupled limit reduces to a bare oscillator") {
  SwitchParams p;
  p.D = 0.0;
  Matrix h = build_hamiltonian(p);
  const int n = p.effective_cutoff();
  Matrix expected = kron(Matrix::Identity(2, 2),
                         Matrix(p.omega0 * number_operator(n)));
  CHECK((h - expected).norm() < 1e-12);
}

TEST_CASE("ground states sit at -omega0 D^2 in both wells") {
  SwitchParams p;
  p.D = 1.0;
  p.omega0 = 1.0;
  Matrix h = build_hamiltonian(p);
  auto [up, down] = ground_states(p);

  for (const StateVector* psi : {&up, &down}) {
    CHECK(std::abs(psi->amp.norm() - 1.0) < 1e-12);
    Cx e = psi->amp.dot(h * psi->amp);
    CHECK(std::abs(e.imag()) < 1e-10);
    CHECK(e.real() == doctest::Approx(-p.omega0 * p.D * p.D).epsilon(1e-9));
    // Eigenvector residual, not just the Rayleigh quotient.
    double res = (h * psi->amp - e.real() * psi->amp).norm();
    CHECK(res < 1e-8);
  }
}

TEST_CASE("pointer components of the ground states overlap as exp(-4 D^2)") {
  // The full states are orthogonal through the spin label; the encoding
  // error lives in the oscillator marginals.
  SwitchParams p;
  p.D = 1.0;
  auto [up, down] = ground_states(p);
  SwitchState su{density_from_state(up), Sector::plus};
  SwitchState sd{density_from_state(down), Sector::minus};
  double f = overlap(pointer_marginal(su), pointer_marginal(sd));
  CHECK(f == doctest::Approx(std::exp(-4.0)).epsilon(1e-9));
  CHECK(f == doctest::Approx(0.0183156389).epsilon(1e-7));
  CHECK(overlap(su.rho, sd.rho) < 1e-12);

  p.D = 1.7;
  auto [u2, d2] = ground_states(p);
  SwitchState su2{density_from_state(u2), Sector::plus};
  SwitchState sd2{density_from_state(d2), Sector::minus};
  double f2 = overlap(pointer_marginal(su2), pointer_marginal(sd2));
  CHECK(f2 == doctest::Approx(std::exp(-4.0 * 1.7 * 1.7)).epsilon(1e-7));
}

TEST_CASE("biased gibbs state matches the exact well hamiltonian") {
  SwitchParams p;
  p.D = 1.0;
  p.kT = 0.5;
  const int n = p.effective_cutoff();
  SwitchState s = biased_gibbs(p, Sector::plus);
  s.validate();

  // Direct route: Gibbs state of omega0 (a^dag - D)(a - D) in the well.
  Matrix a = annihilation(n);
  Matrix b = a - p.D * Matrix::Identity(n, n);
  Matrix hwell = p.omega0 * (b.adjoint() * b);
  DensityMatrix direct = gibbs_state(hwell, p.kT, SpaceSpec{{n}});
  DensityMatrix marg = pointer_marginal(s);
  CHECK(trace_distance(marg, direct) < 1e-9);
}

TEST_CASE("pointer marginal has the displaced-thermal moments") {
  SwitchParams p;
  p.D = 1.4;
  p.kT = 0.8;
  const double nbar = mean_occupation(p.omega0, p.kT);
  for (Sector s : {Sector::plus, Sector::minus}) {
    DensityMatrix m = pointer_marginal(biased_gibbs(p, s));
    const int n = static_cast<int>(m.mat.rows());
    double occ = expectation(Matrix(number_operator(n)), m);
    CHECK(occ == doctest::Approx(nbar + p.D * p.D).epsilon(1e-8));
    double x = expectation(position_operator(n), m);
    CHECK(x == doctest::Approx(sector_sign(s) * p.D).epsilon(1e-8));
  }
}

TEST_CASE("biased gibbs approaches the pure ground state as kT -> 0") {
  SwitchParams p;
  p.D = 1.0;
  p.kT = 0.05;
  SwitchState warm = biased_gibbs(p, Sector::plus);
  auto [up, down] = ground_states(p);
  DensityMatrix pure = density_from_state(up);
  // Resize the pure state onto the warm cutoff if they differ.
  REQUIRE(pure.space.total() == warm.rho.space.total());
  CHECK(trace_distance(warm.rho, pure) < 1e-6);

  DensityMatrix m = pointer_marginal(warm);
  double purity = trace_of_product(m.mat, m.mat);
  CHECK(purity > 1.0 - 1e-6);
}

TEST_CASE("overlap formula: zero-temperature and high-temperature limits") {
  SwitchParams p;
  p.D = 1.0;
  p.kT = 0.0;
  CHECK(overlap_analytic(p) == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));

  p.kT = 50.0;
  double eps = overlap_analytic(p);
  double classical = std::exp(-barrier_energy(p) / p.kT);
  CHECK(std::abs(eps - classical) / classical < 1e-4);
}

TEST_CASE("numeric overlap agrees with the closed form") {
  SwitchParams p;
  for (double d : {0.6, 1.0, 1.5}) {
    for (double kt : {0.25, 1.0, 4.0}) {
      p.D = d;
      p.kT = kt;
      double a = overlap_analytic(p);
      double n = overlap_numeric(p);
      CHECK(std::abs(n - a) / a < 1e-6);
    }
  }
}

TEST_CASE("noise temperature values and coth identity") {
  SwitchParams p;
  p.kT = 0.0;
  CHECK(noise_temperature(p) == doctest::Approx(0.5).epsilon(1e-12));

  p.kT = 10.0;
  CHECK(noise_temperature(p) / p.kT == doctest::Approx(1.000833).epsilon(1e-6));

  p.kT = 1.0;
  CHECK(noise_temperature(p) == doctest::Approx(1.0819767).epsilon(1e-6));

  for (double kt : {0.3, 1.0, 2.5, 7.0}) {
    p.kT = kt;
    double coth = 1.0 / std::tanh(p.omega0 / (2.0 * kt));
    CHECK(noise_temperature(p) ==
          doctest::Approx(0.5 * p.omega0 * coth).epsilon(1e-12));
  }
}

TEST_CASE("noise temperature times log inverse overlap equals the barrier") {
  SwitchParams p;
  for (double d : {0.5, 1.0, 2.0}) {
    for (double kt : {0.2, 1.0, 5.0}) {
      p.D = d;
      p.kT = kt;
      double lhs = noise_temperature(p) * std::log(1.0 / overlap_analytic(p));
      CHECK(std::abs(lhs - barrier_energy(p)) < 1e-12 * barrier_energy(p));
    }
  }
}

TEST_CASE("barrier energy is 2 D^2 omega0") {
  SwitchParams p;
  p.D = 1.0;
  p.omega0 = 1.0;
  CHECK(barrier_energy(p) == doctest::Approx(2.0).epsilon(1e-12));
  p.D = 3.0;
  p.omega0 = 0.5;
  CHECK(barrier_energy(p) == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("excited state lies one flip above the relaxed state") {
  SwitchParams p;
  p.D = 1.0;
  p.kT = 0.6;
  for (Sector s : {Sector::plus, Sector::minus}) {
    SwitchState relaxed = biased_gibbs(p, s);
    SwitchState excited = excited_state(p, s);
    excited.validate();
    CHECK(excited.sector == s);
    double de = mean_energy(p, excited) - mean_energy(p, relaxed);
    CHECK(de == doctest::Approx(4.0 * p.D * p.D * p.omega0).epsilon(1e-9));
  }
}

TEST_CASE("halfway flip costs exactly the barrier energy") {
  SwitchParams p;
  p.D = 1.2;
  p.kT = 0.9;
  SwitchState relaxed = biased_gibbs(p, Sector::minus);
  SwitchState excited = excited_state(p, Sector::plus);
  DensityMatrix half{0.5 * (relaxed.rho.mat + excited.rho.mat),
                     relaxed.rho.space};
  Matrix h = build_hamiltonian(p);
  double e_half = expectation(h, half);
  double e_relaxed = mean_energy(p, relaxed);
  CHECK(e_half - e_relaxed == doctest::Approx(barrier_energy(p)).epsilon(1e-9));
}

TEST_CASE("not gate maps relaxed states onto excited ones") {
  SwitchParams p;
  p.D = 1.0;
  p.kT = 0.5;
  SwitchState in = biased_gibbs(p, Sector::plus);
  GateResult out = not_gate(p, in);
  CHECK(out.state.sector == Sector::minus);
  SwitchState target = excited_state(p, Sector::minus);
  CHECK(trace_distance(out.state.rho, target.rho) < 1e-12);
  CHECK(out.work == doctest::Approx(4.0 * p.D * p.D * p.omega0).epsilon(1e-9));
}

TEST_CASE("not gate is an involution and its work cancels") {
  SwitchParams p;
  p.D = 0.9;
  p.kT = 1.3;
  SwitchState in = biased_gibbs(p, Sector::minus);
  GateResult first = not_gate(p, in);
  GateResult second = not_gate(p, first.state);
  CHECK(second.state.sector == in.sector);
  CHECK(trace_distance(second.state.rho, in.rho) < 1e-12);
  CHECK(first.work + second.work == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("parameter validation") {
  SwitchParams p;
  p.D = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.D = 1.0;
  p.omega0 = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.omega0 = 1.0;
  p.kT = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("inadequate cutoff raises a truncation error") {
  SwitchParams p;
  p.D = 3.0;
  p.cutoff = 10;
  CHECK_THROWS_AS(biased_gibbs(p, Sector::plus), TruncationError);
  p.kT = 0.4;
  CHECK_THROWS_AS(biased_gibbs(p, Sector::plus), TruncationError);
}

TEST_CASE("switch state validation rejects a mislabeled sector") {
  SwitchParams p;
  p.D = 1.0;
  p.kT = 0.3;
  SwitchState s = biased_gibbs(p, Sector::plus);
  s.sector = Sector::minus;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
