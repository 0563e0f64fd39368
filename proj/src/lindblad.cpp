// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "davies_internal.hpp"
#include "qswitch/open_dynamics.hpp"
#include "qswitch/util.hpp"

namespace qswitch {

namespace detail {

Eigen::VectorXd SectorSpectrum::energies() const {
  Eigen::VectorXd e(2 * cutoff);
  e.head(cutoff) = e_plus;
  e.tail(cutoff) = e_minus;
  return e;
}

Matrix SectorSpectrum::embed() const {
  Matrix v = Matrix::Zero(2 * cutoff, 2 * cutoff);
  v.topLeftCorner(cutoff, cutoff) = v_plus.cast<Cx>();
  v.bottomRightCorner(cutoff, cutoff) = v_minus.cast<Cx>();
  return v;
}

SectorSpectrum switch_spectrum(const SwitchParams& p) {
  p.validate();
  const int n = p.effective_cutoff();
  Matrix a = annihilation(n);
  Eigen::MatrixXd x = (a + a.adjoint()).real();
  Eigen::MatrixXd num = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) num(k, k) = k;

  SectorSpectrum s;
  s.cutoff = n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> plus(
      p.omega0 * (num - p.D * x));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> minus(
      p.omega0 * (num + p.D * x));
  if (plus.info() != Eigen::Success || minus.info() != Eigen::Success)
    throw std::runtime_error("switch_spectrum: eigensolver failed");
  s.e_plus = plus.eigenvalues();
  s.v_plus = plus.eigenvectors();
  s.e_minus = minus.eigenvalues();
  s.v_minus = minus.eigenvectors();
  return s;
}

std::vector<EigenOp> decompose_coupling(const Matrix& coupling,
                                        const Eigen::VectorXd& energies,
                                        double bin_width, double element_tol) {
  const int d = static_cast<int>(coupling.rows());
  const double peak = coupling.cwiseAbs().maxCoeff();
  if (peak == 0.0) return {};
  const double cut = element_tol * peak;

  struct Item {
    double omega;
    int i, j;
  };
  std::vector<Item> items;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      if (std::abs(coupling(i, j)) > cut)
        items.push_back({energies[j] - energies[i], i, j});
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.omega < b.omega; });

  std::vector<EigenOp> out;
  std::size_t lo = 0;
  while (lo < items.size()) {
    std::size_t hi = lo + 1;
    while (hi < items.size() && items[hi].omega - items[hi - 1].omega <= bin_width)
      ++hi;
    Matrix op = Matrix::Zero(d, d);
    double omega_sum = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      op(items[k].i, items[k].j) = coupling(items[k].i, items[k].j);
      omega_sum += items[k].omega;
    }
    out.push_back({std::move(op), omega_sum / static_cast<double>(hi - lo)});
    lo = hi;
  }
  return out;
}

double kms_rate(double base_rate, double omega, double kT) {
  if (omega >= 0.0) return base_rate;
  return base_rate * std::exp(omega / kT);
}

Eigen::MatrixXd pauli_rates(
    const std::vector<std::pair<Matrix, double>>& eigenbasis_jumps, int dim) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [op, rate] : eigenbasis_jumps)
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i)
        if (i != j) r(i, j) += rate * std::norm(op(i, j));
  for (int j = 0; j < dim; ++j) r(j, j) = -r.col(j).sum();
  return r;
}

PopulationPropagator::PopulationPropagator(const Eigen::MatrixXd& r) : r_(r) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(r);
  if (es.info() == Eigen::Success) {
    vals_ = es.eigenvalues();
    vecs_ = es.eigenvectors();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(vecs_);
    if (lu.isInvertible()) {
      vecs_inv_ = lu.inverse();
      double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
      double resid =
          ((vecs_ * vals_.asDiagonal() * vecs_inv_).real() - r).cwiseAbs().maxCoeff();
      spectral_ok_ = resid < 1e-8 * scale;
    }
  }
}

Eigen::VectorXd PopulationPropagator::at(const Eigen::VectorXd& p0,
                                         double t) const {
  if (spectral_ok_) {
    Eigen::VectorXcd c = vecs_inv_ * p0.cast<Cx>();
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::exp(vals_[k] * t);
    return (vecs_ * c).real();
  }
  // Stepped matrix exponential keeps the Pade argument small.
  double norm = r_.cwiseAbs().rowwise().sum().maxCoeff();
  int steps = std::max(1, static_cast<int>(std::ceil(norm * t / 8.0)));
  Eigen::MatrixXd m = (r_ * (t / steps)).exp();
  Eigen::VectorXd p = p0;
  for (int k = 0; k < steps; ++k) p = m * p;
  return p;
}

double PopulationPropagator::observable(const Eigen::VectorXd& p0,
                                        const Eigen::VectorXd& weight,
                                        double t) const {
  if (spectral_ok_) {
    Eigen::VectorXcd c = vecs_inv_ * p0.cast<Cx>();
    Cx acc = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k)
      acc += (weight.cast<Cx>().dot(vecs_.col(k))) * c[k] * std::exp(vals_[k] * t);
    return acc.real();
  }
  return weight.dot(at(p0, t));
}

}  // namespace detail

void BathSpec::validate() const {
  if (kT < 0.0) throw std::invalid_argument("BathSpec: kT must be >= 0");
  if (gamma_o < 0.0 || gamma_1 < 0.0)
    throw std::invalid_argument("BathSpec: rates must be >= 0");
  if (spectral_form != "flat-kms")
    throw std::invalid_argument("BathSpec: unknown spectral form '" +
                                spectral_form + "'");
}

void LindbladGenerator::validate(double tol) const {
  const int d = dim();
  if (hamiltonian.rows() != hamiltonian.cols() || d != space.total())
    throw std::invalid_argument("LindbladGenerator: dimension mismatch");
  double hscale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() >
      1e-12 * hscale)
    throw std::invalid_argument("LindbladGenerator: Hamiltonian not Hermitian");
  for (const auto& [op, rate] : jumps) {
    if (op.rows() != d || op.cols() != d)
      throw std::invalid_argument("LindbladGenerator: jump dimension mismatch");
    if (rate < 0.0)
      throw std::invalid_argument("LindbladGenerator: negative jump rate");
  }
  if (d <= 16) {
    Matrix s = superoperator(*this);
    Vector vec_id = Vector::Zero(d * d);
    for (int k = 0; k < d; ++k) vec_id[k * d + k] = 1.0;
    // Row vector of column sums of the superoperator: Tr(L(E_j)) for every
    // basis matrix E_j.
    Vector col_traces = s.adjoint() * vec_id;
    if (col_traces.cwiseAbs().maxCoeff() > tol * std::max(1.0, s.norm()))
      throw std::invalid_argument(
          "LindbladGenerator: generator does not preserve trace");
  } else {
    GaussianRng rng(0x51a7e5u);
    for (int trial = 0; trial < 8; ++trial) {
      Matrix g(d, d);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) g(i, j) = Cx(rng.normal(), rng.normal());
      Matrix rho = g * g.adjoint();
      rho /= rho.trace();
      Matrix lrho = generator_action(*this, rho);
      if (std::abs(lrho.trace()) > tol * std::max(1.0, lrho.norm()))
        throw std::invalid_argument(
            "LindbladGenerator: generator does not preserve trace");
    }
  }
}

LindbladGenerator build_generator(const SwitchParams& p, const BathSpec& b,
                                  bool include_spin_flip) {
  p.validate();
  b.validate();
  const int n = p.effective_cutoff();
  const int d = 2 * n;

  detail::SectorSpectrum spec = detail::switch_spectrum(p);
  Eigen::VectorXd energies = spec.energies();
  Matrix v = spec.embed();

  Matrix a = annihilation(n);
  Eigen::MatrixXd x = (a + a.adjoint()).real();

  // Couplings in the eigenbasis. The position coupling is sector-diagonal;
  // the spin coupling swaps sectors, so its blocks are the overlap matrices
  // between the two sector eigenbases.
  Matrix x_tilde = Matrix::Zero(d, d);
  x_tilde.topLeftCorner(n, n) = (spec.v_plus.transpose() * x * spec.v_plus).cast<Cx>();
  x_tilde.bottomRightCorner(n, n) =
      (spec.v_minus.transpose() * x * spec.v_minus).cast<Cx>();

  LindbladGenerator g;
  g.hamiltonian = build_hamiltonian(p);
  g.space = SpaceSpec{{2, n}};

  const double bin_width = detail::kBinTol * p.omega0;
  auto add_coupling = [&](const Matrix& c_tilde, double base_rate) {
    if (base_rate == 0.0) return;
    for (auto& eo :
         detail::decompose_coupling(c_tilde, energies, bin_width,
                                    detail::kElementTol)) {
      if (b.kT == 0.0 && eo.omega < -bin_width) continue;  // decay only
      double rate = b.kT == 0.0 ? base_rate
                                : detail::kms_rate(base_rate, eo.omega, b.kT);
      g.jumps.emplace_back(v * eo.op * v.adjoint(), rate);
    }
  };

  add_coupling(x_tilde, b.gamma_o);
  if (include_spin_flip) {
    Matrix s_tilde = Matrix::Zero(d, d);
    s_tilde.topRightCorner(n, n) =
        (spec.v_plus.transpose() * spec.v_minus).cast<Cx>();
    s_tilde.bottomLeftCorner(n, n) =
        (spec.v_minus.transpose() * spec.v_plus).cast<Cx>();
    add_coupling(s_tilde, b.gamma_1);
  }
  return g;
}

Matrix generator_action(const LindbladGenerator& g, const Matrix& rho) {
  const Cx i_unit(0.0, 1.0);
  Matrix out = -i_unit * (g.hamiltonian * rho - rho * g.hamiltonian);
  for (const auto& [op, rate] : g.jumps) {
    Matrix ada = op.adjoint() * op;
    out += rate * (op * rho * op.adjoint() -
                   0.5 * (ada * rho + rho * ada));
  }
  return out;
}

Matrix superoperator(const LindbladGenerator& g) {
  const int d = g.dim();
  Matrix id = Matrix::Identity(d, d);
  const Cx i_unit(0.0, 1.0);
  // Column-major vec: vec(A rho B) = (B^T kron A) vec(rho).
  Matrix s = -i_unit * (kron(id, g.hamiltonian) -
                        kron(g.hamiltonian.transpose(), id));
  for (const auto& [op, rate] : g.jumps) {
    Matrix ada = op.adjoint() * op;
    s += rate * (kron(op.conjugate(), op) -
                 0.5 * (kron(id, ada) + kron(ada.transpose(), id)));
  }
  return s;
}

}  // namespace qswitch
