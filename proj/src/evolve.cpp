// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Trajectory integration for Lindblad generators. Three paths, picked per
// call: an exact matrix exponential of the dense superoperator at small
// dimension; an exact population-level propagation when the initial state
// is diagonal in the Hamiltonian eigenbasis and the jump structure lets
// populations evolve autonomously; and an interaction-picture adaptive
// integrator for eigenoperator (Davies) generators, where the dissipator
// is time-independent and the stiff Hamiltonian phases are applied exactly.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "davies_internal.hpp"
#include "qswitch/kernels.hpp"
#include "qswitch/open_dynamics.hpp"
#include "qswitch/util.hpp"

namespace qswitch {

namespace {

struct EigenFrame {
  Eigen::VectorXd energies;  // ascending
  Matrix vectors;            // columns
};

EigenFrame decompose_hamiltonian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("evolve: Hamiltonian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Contiguous groups of numerically degenerate levels.
std::vector<std::pair<int, int>> degenerate_clusters(
    const Eigen::VectorXd& energies) {
  const double tol =
      1e-9 * std::max(1.0, energies.cwiseAbs().maxCoeff());
  std::vector<std::pair<int, int>> out;
  int lo = 0;
  for (int i = 1; i <= energies.size(); ++i) {
    if (i == energies.size() || energies[i] - energies[i - 1] > tol) {
      out.emplace_back(lo, i);  // [lo, i)
      lo = i;
    }
  }
  return out;
}

// True when every jump operator connects only level pairs with a common
// Bohr frequency, which is what makes the interaction-picture dissipator
// time-independent.
bool jumps_are_eigenoperators(
    const std::vector<std::pair<Matrix, double>>& eigen_jumps,
    const Eigen::VectorXd& energies) {
  const double scale = std::max(1.0, energies.cwiseAbs().maxCoeff());
  for (const auto& [op, rate] : eigen_jumps) {
    double peak = op.cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    double wsum = 0.0, sum = 0.0;
    for (int j = 0; j < op.cols(); ++j)
      for (int i = 0; i < op.rows(); ++i) {
        double w = std::norm(op(i, j));
        if (w > 1e-20 * peak * peak) {
          wsum += w * (energies[j] - energies[i]);
          sum += w;
        }
      }
    double omega = wsum / sum;
    for (int j = 0; j < op.cols(); ++j)
      for (int i = 0; i < op.rows(); ++i)
        if (std::abs(op(i, j)) > 1e-10 * peak &&
            std::abs(energies[j] - energies[i] - omega) > 1e-6 * scale)
          return false;
  }
  return true;
}

// Checks that, in this eigenbasis, populations neither feed nor receive
// coherences through the dissipator: the jump-weighted Gram matrix must be
// diagonal, and within every degenerate cluster the column/row products of
// the jumps must vanish pairwise.
bool populations_autonomous(
    const std::vector<std::pair<Matrix, double>>& eigen_jumps,
    const std::vector<std::pair<int, int>>& clusters, const Matrix& gsum) {
  const int d = static_cast<int>(gsum.rows());
  const double rate_scale =
      std::max(1e-300, gsum.diagonal().real().maxCoeff());
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      if (i != j && std::abs(gsum(i, j)) > 1e-10 * rate_scale) return false;

  for (const auto& [lo, hi] : clusters) {
    for (int i = lo; i < hi; ++i)
      for (int j = i + 1; j < hi; ++j) {
        for (int m = 0; m < d; ++m) {
          Cx feed = 0.0, emit = 0.0;
          for (const auto& [op, rate] : eigen_jumps) {
            feed += rate * op(m, i) * std::conj(op(m, j));
            emit += rate * op(i, m) * std::conj(op(j, m));
          }
          if (std::abs(feed) > 1e-10 * rate_scale ||
              std::abs(emit) > 1e-10 * rate_scale)
            return false;
        }
      }
  }
  return true;
}

Matrix to_matrix(const Eigen::VectorXcd& y, int d) {
  return Eigen::Map<const Matrix>(y.data(), d, d);
}

void check_trajectory_health(const Matrix& rho, double t) {
  double drift = std::abs(rho.trace().real() - 1.0) +
                 std::abs(rho.trace().imag());
  if (drift > 1e-8)
    throw std::runtime_error("evolve: trace drift " + std::to_string(drift) +
                             " at t=" + std::to_string(t));
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::runtime_error("evolve: Hermiticity lost at t=" +
                             std::to_string(t));
}

DensityMatrix finalize_state(Matrix rho, const SpaceSpec& space) {
  rho = 0.5 * (rho + rho.adjoint().eval());
  double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8)
    throw std::runtime_error("evolve: final trace off by " +
                             std::to_string(tr - 1.0));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw std::runtime_error("evolve: positivity lost, min eigenvalue " +
                             std::to_string(es.eigenvalues().minCoeff()));
  return DensityMatrix{std::move(rho), space};
}

// Dissipator-only integration in the interaction picture; also used with
// the Hamiltonian commutator bolted on for non-eigenoperator generators.
Matrix integrate_master(const JumpKernel& kernel, const Matrix* h,
                        const Matrix& rho0, double t, double dt) {
  const int d = kernel.dim();
  const Cx i_unit(0.0, 1.0);
  OdeRhs rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
    Matrix rho = to_matrix(y, d);
    Matrix out(d, d);
    kernel.rhs_parallel(rho, out);
    if (h != nullptr)
      out.noalias() -= i_unit * ((*h) * rho - rho * (*h));
    dy = Eigen::Map<const Eigen::VectorXcd>(out.data(), d * d);
  };
  OdeOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-9;
  opts.initial_step = dt;
  opts.on_step = [&](double tt, const Eigen::VectorXcd& y) {
    check_trajectory_health(to_matrix(y, d), tt);
  };
  Eigen::VectorXcd y0 = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
  Eigen::VectorXcd yt = integrate_ode(rhs, y0, 0.0, t, opts);
  return to_matrix(yt, d);
}

}  // namespace

DensityMatrix evolve(const LindbladGenerator& g, const DensityMatrix& rho0,
                     double t, double dt) {
  const int d = g.dim();
  if (rho0.mat.rows() != d)
    throw std::invalid_argument("evolve: state dimension mismatch");
  if (t < 0.0) throw std::invalid_argument("evolve: negative time");
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");

  JumpKernel kernel = JumpKernel::build(g.jumps, d);
  if (dt * kernel.max_rate() >= 0.1)
    throw std::invalid_argument(
        "evolve: dt does not resolve the fastest rate (dt*rate = " +
        std::to_string(dt * kernel.max_rate()) + ")");
  if (t == 0.0) return rho0;

  if (d <= 16) {
    Matrix s = superoperator(g);
    Matrix prop = (s * t).exp();
    Eigen::VectorXcd y0 =
        Eigen::Map<const Eigen::VectorXcd>(rho0.mat.data(), d * d);
    return finalize_state(to_matrix(prop * y0, d), rho0.space);
  }

  EigenFrame frame = decompose_hamiltonian(g.hamiltonian);
  std::vector<std::pair<Matrix, double>> eigen_jumps;
  eigen_jumps.reserve(g.jumps.size());
  for (const auto& [op, rate] : g.jumps)
    eigen_jumps.emplace_back(frame.vectors.adjoint() * op * frame.vectors,
                             rate);
  Matrix rho_tilde = frame.vectors.adjoint() * rho0.mat * frame.vectors;
  auto clusters = degenerate_clusters(frame.energies);

  // Population path: rotate within degenerate clusters so the initial
  // state is diagonal there, then verify diagonality and autonomy.
  {
    Matrix v = frame.vectors;
    Matrix rt = rho_tilde;
    std::vector<std::pair<Matrix, double>> jt = eigen_jumps;
    for (const auto& [lo, hi] : clusters) {
      int w = hi - lo;
      if (w < 2) continue;
      Eigen::SelfAdjointEigenSolver<Matrix> es(rt.block(lo, lo, w, w));
      Matrix u = es.eigenvectors();
      rt.middleCols(lo, w) = (rt.middleCols(lo, w) * u).eval();
      rt.middleRows(lo, w) = (u.adjoint() * rt.middleRows(lo, w)).eval();
      v.middleCols(lo, w) = (v.middleCols(lo, w) * u).eval();
      for (auto& [op, rate] : jt) {
        op.middleCols(lo, w) = (op.middleCols(lo, w) * u).eval();
        op.middleRows(lo, w) = (u.adjoint() * op.middleRows(lo, w)).eval();
      }
    }
    double offdiag = 0.0;
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        if (i != j) offdiag = std::max(offdiag, std::abs(rt(i, j)));
    if (offdiag < 1e-12) {
      Matrix gsum = Matrix::Zero(d, d);
      for (const auto& [op, rate] : jt) gsum += rate * (op.adjoint() * op);
      if (populations_autonomous(jt, clusters, gsum)) {
        Eigen::MatrixXd r = detail::pauli_rates(jt, d);
        detail::PopulationPropagator prop(r);
        Eigen::VectorXd p0 = rt.diagonal().real();
        Eigen::VectorXd pt = prop.at(p0, t);
        Matrix rho_t = v * pt.cast<Cx>().asDiagonal() * v.adjoint();
        return finalize_state(std::move(rho_t), rho0.space);
      }
    }
  }

  if (jumps_are_eigenoperators(eigen_jumps, frame.energies)) {
    JumpKernel rot = JumpKernel::build(eigen_jumps, d);
    Matrix rt = integrate_master(rot, nullptr, rho_tilde, t, dt);
    // Undo the interaction picture: exact Hamiltonian phases.
    Eigen::VectorXcd phase(d);
    for (int i = 0; i < d; ++i)
      phase[i] = std::exp(Cx(0.0, -frame.energies[i] * t));
    Matrix rho_eig = phase.asDiagonal() * rt * phase.conjugate().asDiagonal();
    Matrix rho_t = frame.vectors * rho_eig * frame.vectors.adjoint();
    return finalize_state(std::move(rho_t), rho0.space);
  }

  Matrix rho_t = integrate_master(kernel, &g.hamiltonian, rho0.mat, t, dt);
  return finalize_state(std::move(rho_t), rho0.space);
}

DensityMatrix stationary_state(const LindbladGenerator& g) {
  const int d = g.dim();
  if (d <= 16) {
    Matrix s = superoperator(g);
    Eigen::ComplexEigenSolver<Matrix> es(s);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("stationary_state: eigensolver failed");
    double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    int best = -1;
    int null_count = 0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
      if (std::abs(es.eigenvalues()[k]) < 1e-9 * scale) {
        ++null_count;
        best = k;
      }
    }
    if (null_count == 0)
      throw std::runtime_error("stationary_state: no null vector found");
    if (null_count > 1)
      throw std::invalid_argument("stationary_state: fixed point not unique");
    Matrix rho = to_matrix(es.eigenvectors().col(best), d);
    rho = 0.5 * (rho + rho.adjoint().eval());
    double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12)
      throw std::runtime_error("stationary_state: traceless null vector");
    rho /= tr;
    return DensityMatrix{std::move(rho), g.space};
  }

  EigenFrame frame = decompose_hamiltonian(g.hamiltonian);
  std::vector<std::pair<Matrix, double>> eigen_jumps;
  for (const auto& [op, rate] : g.jumps)
    eigen_jumps.emplace_back(frame.vectors.adjoint() * op * frame.vectors,
                             rate);
  Eigen::MatrixXd r = detail::pauli_rates(eigen_jumps, d);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(r);
  lu.setThreshold(1e-10);
  Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() != 1)
    throw std::invalid_argument(
        "stationary_state: population kernel dimension " +
        std::to_string(kernel.cols()));
  Eigen::VectorXd p = kernel.col(0);
  if (p.sum() < 0.0) p = -p;
  if (p.minCoeff() < -1e-10 * p.cwiseAbs().maxCoeff())
    throw std::runtime_error("stationary_state: negative populations");
  p = p.cwiseMax(0.0);
  p /= p.sum();
  Matrix rho = frame.vectors * p.cast<Cx>().asDiagonal() *
               frame.vectors.adjoint();
  Matrix resid = generator_action(g, rho);
  double rate_scale = std::max(1e-300, JumpKernel::build(g.jumps, d).max_rate());
  if (resid.cwiseAbs().maxCoeff() > 1e-8 * rate_scale)
    throw std::runtime_error(
        "stationary_state: no diagonal stationary state at this dimension");
  return DensityMatrix{std::move(rho), g.space};
}

double relaxation_heat(const SwitchParams& p, const BathSpec& b) {
  p.validate();
  b.validate();
  if (std::abs(p.kT - b.kT) > 1e-12 * std::max(1.0, p.kT))
    throw std::invalid_argument(
        "relaxation_heat: switch and bath temperatures differ");

  detail::SectorSpectrum spec = detail::switch_spectrum(p);
  const int n = spec.cutoff;
  const int d = 2 * n;

  LindbladGenerator g = build_generator(p, b, /*include_spin_flip=*/false);
  Matrix v = spec.embed();
  std::vector<std::pair<Matrix, double>> eigen_jumps;
  for (const auto& [op, rate] : g.jumps)
    eigen_jumps.emplace_back(v.adjoint() * op * v, rate);

  // Flipped state in the minus sector: oscillator displaced to +D.
  SwitchState star = excited_state(p, Sector::minus);
  Matrix rho_osc = Matrix::Zero(n, n);
  {
    DensityMatrix marg = pointer_marginal(star);
    rho_osc = marg.mat;
  }
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(d);
  p0.tail(n) =
      (spec.v_minus.transpose().cast<Cx>() * rho_osc * spec.v_minus.cast<Cx>())
          .diagonal()
          .real();
  p0 = p0.cwiseMax(0.0);
  p0 /= p0.sum();

  Eigen::VectorXd energies = spec.energies();
  detail::PopulationPropagator prop(detail::pauli_rates(eigen_jumps, d));

  double t = b.gamma_o > 0.0 ? 10.0 / b.gamma_o : 1.0;
  Eigen::VectorXd p_final;
  bool converged = false;
  for (int round = 0; round < 60; ++round) {
    Eigen::VectorXd p1 = prop.at(p0, t);
    Eigen::VectorXd p2 = prop.at(p0, 2.0 * t);
    if ((p1 - p2).lpNorm<1>() < 1e-10) {
      p_final = p2;
      converged = true;
      break;
    }
    t *= 2.0;
  }
  if (!converged)
    throw std::runtime_error("relaxation_heat: relaxation did not converge");
  return energies.dot(p0) - energies.dot(p_final);
}

LifetimeEstimate estimate_lifetime(const SwitchParams& p, const BathSpec& b) {
  p.validate();
  b.validate();
  if (b.kT <= 0.0)
    throw std::invalid_argument("estimate_lifetime: bath temperature must be > 0");
  if (std::abs(p.kT - b.kT) > 1e-12 * std::max(1.0, p.kT))
    throw std::invalid_argument(
        "estimate_lifetime: switch and bath temperatures differ");
  if (b.gamma_1 <= 0.0)
    throw std::invalid_argument("estimate_lifetime: spin-flip rate must be > 0");

  auto fit_tau = [&](const SwitchParams& params,
                     double tau_guess) -> std::pair<double, double> {
    detail::SectorSpectrum spec = detail::switch_spectrum(params);
    const int n = spec.cutoff;
    const int d = 2 * n;
    LindbladGenerator g = build_generator(params, b, /*include_spin_flip=*/true);
    Matrix v = spec.embed();
    std::vector<std::pair<Matrix, double>> eigen_jumps;
    for (const auto& [op, rate] : g.jumps)
      eigen_jumps.emplace_back(v.adjoint() * op * v, rate);
    detail::PopulationPropagator prop(detail::pauli_rates(eigen_jumps, d));

    // Relaxed plus-sector state: thermal populations over the sector levels.
    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(d);
    for (int k = 0; k < n; ++k)
      p0[k] = std::exp(-(spec.e_plus[k] - spec.e_plus[0]) / b.kT);
    p0 /= p0.sum();
    Eigen::VectorXd weight(d);
    weight.head(n).setConstant(1.0);
    weight.tail(n).setConstant(-1.0);

    double tau = tau_guess;
    LineFit fit;
    for (int iter = 0; iter < 60; ++iter) {
      constexpr int kSamples = 40;
      std::vector<double> ts, ys;
      ts.reserve(kSamples);
      ys.reserve(kSamples);
      for (int k = 0; k < kSamples; ++k) {
        double tt = tau * (0.2 + 2.8 * k / (kSamples - 1.0));
        double m = prop.observable(p0, weight, tt);
        if (m > 0.0) {
          ts.push_back(tt);
          ys.push_back(std::log(m));
        }
      }
      if (ts.size() < 10)
        return {tau, 1.0};  // decay too fast or too noisy to fit; flag it
      fit = fit_line(ts, ys);
      if (fit.slope >= 0.0) return {tau, 1.0};
      double tau_new = -1.0 / fit.slope;
      bool done = std::abs(tau_new - tau) <= 1e-6 * tau;
      tau = tau_new;
      if (done) break;
    }
    return {tau, fit.rms_residual};
  };

  double guess =
      std::exp(barrier_energy(p) / noise_temperature(p)) / (2.0 * b.gamma_1);
  auto [tau, err] = fit_tau(p, guess);

  SwitchParams p_ref = p;
  p_ref.D = 0.0;
  p_ref.cutoff = p.effective_cutoff();
  auto [tau0, err0] = fit_tau(p_ref, 1.0 / (2.0 * b.gamma_1));

  LifetimeEstimate est;
  est.tau = tau;
  est.tau0 = tau0;
  est.fit_error = std::max(err, err0);
  est.flagged = est.fit_error > kLifetimeFitThreshold;
  return est;
}

}  // namespace qswitch
