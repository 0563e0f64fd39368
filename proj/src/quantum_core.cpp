// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qswitch/quantum_core.hpp"

#include <algorithm>
#include <cmath>

namespace qswitch {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void StateVector::validate(double norm_tol) const {
  require(amp.size() == space.total(), "StateVector: amplitude length does not match space");
  double n = amp.norm();
  if (std::abs(n - 1.0) > norm_tol)
    throw std::invalid_argument("StateVector: norm deviates from 1 by " + std::to_string(n - 1.0));
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
  require(mat.rows() == mat.cols(), "DensityMatrix: matrix is not square");
  require(mat.rows() == space.total(), "DensityMatrix: matrix size does not match space");
  double herm_dev = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > herm_tol)
    throw std::invalid_argument("DensityMatrix: Hermiticity violated by " + std::to_string(herm_dev));
  double tr_dev = std::abs(mat.trace() - Cx(1.0, 0.0));
  if (tr_dev > trace_tol)
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_dev));
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(mat), Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -psd_tol)
    throw std::invalid_argument("DensityMatrix: minimum eigenvalue " + std::to_string(min_eig));
}

Matrix annihilation(int cutoff) {
  require(cutoff >= 1, "annihilation: cutoff must be >= 1");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix number_operator(int cutoff) {
  require(cutoff >= 1, "number_operator: cutoff must be >= 1");
  Matrix n = Matrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = double(k);
  return n;
}

Matrix pauli_x() {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

Matrix pauli_y() {
  Matrix s(2, 2);
  s << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
  return s;
}

Matrix pauli_z() {
  Matrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix displacement(Cx alpha, int cutoff) {
  Matrix a = annihilation(cutoff);
  // exp(alpha a^dag - conj(alpha) a) = exp(i K), K Hermitian.
  Matrix k = Cx(0, -1) * (alpha * a.adjoint() - std::conj(alpha) * a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  Vector phases(cutoff);
  for (int i = 0; i < cutoff; ++i) phases(i) = std::exp(Cx(0, 1) * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

StateVector coherent_state(Cx alpha, int cutoff, double deficit_tol) {
  require(cutoff >= 1, "coherent_state: cutoff must be >= 1");
  Vector amp(cutoff);
  amp(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < cutoff; ++n) amp(n) = amp(n - 1) * alpha / std::sqrt(double(n));
  double kept = amp.squaredNorm();
  double deficit = 1.0 - kept;
  if (deficit > deficit_tol)
    throw TruncationError("coherent_state: cutoff " + std::to_string(cutoff) +
                          " leaves norm deficit " + std::to_string(deficit) +
                          " for |alpha| = " + std::to_string(std::abs(alpha)));
  amp /= std::sqrt(kept);
  return StateVector{std::move(amp), SpaceSpec{cutoff}};
}

DensityMatrix thermal_oscillator(double nbar, int cutoff) {
  require(nbar >= 0.0, "thermal_oscillator: nbar must be >= 0");
  require(cutoff >= 1, "thermal_oscillator: cutoff must be >= 1");
  Matrix rho = Matrix::Zero(cutoff, cutoff);
  if (nbar == 0.0) {
    rho(0, 0) = 1.0;
  } else {
    double q = nbar / (nbar + 1.0);
    double w = 1.0, norm = 0.0;
    for (int n = 0; n < cutoff; ++n, w *= q) {
      rho(n, n) = w;
      norm += w;
    }
    rho /= norm;
  }
  return DensityMatrix{std::move(rho), SpaceSpec{cutoff}};
}

DensityMatrix gibbs_state(const Matrix& h, double kT, const SpaceSpec& space) {
  require(h.rows() == h.cols() && h.rows() == space.total(), "gibbs_state: dimension mismatch");
  require(kT >= 0.0, "gibbs_state: kT must be >= 0");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h));
  const auto& ev = es.eigenvalues();
  double e0 = ev.minCoeff();
  Eigen::VectorXd w(ev.size());
  if (kT == 0.0) {
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (int i = 0; i < ev.size(); ++i) w(i) = (ev(i) - e0 <= 1e-10 * scale) ? 1.0 : 0.0;
  } else {
    for (int i = 0; i < ev.size(); ++i) w(i) = std::exp(-(ev(i) - e0) / kT);
  }
  w /= w.sum();
  Matrix rho = es.eigenvectors() * w.cast<Cx>().asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix{hermitize(rho), space};
}

DensityMatrix density_from_state(const StateVector& psi) {
  return DensityMatrix{psi.amp * psi.amp.adjoint(), psi.space};
}

DensityMatrix maximally_mixed(int dim) {
  require(dim >= 1, "maximally_mixed: dim must be >= 1");
  return DensityMatrix{Matrix::Identity(dim, dim) / double(dim), SpaceSpec{dim}};
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector amp(a.amp.size() * b.amp.size());
  for (int i = 0; i < a.amp.size(); ++i)
    amp.segment(i * b.amp.size(), b.amp.size()) = a.amp(i) * b.amp;
  SpaceSpec space = a.space;
  space.dims.insert(space.dims.end(), b.space.dims.begin(), b.space.dims.end());
  return StateVector{std::move(amp), std::move(space)};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  SpaceSpec space = a.space;
  space.dims.insert(space.dims.end(), b.space.dims.begin(), b.space.dims.end());
  return DensityMatrix{kron(a.mat, b.mat), std::move(space)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const auto& dims = rho.space.dims;
  int nfac = int(dims.size());
  require(!keep.empty(), "partial_trace: keep list is empty");
  for (size_t k = 0; k < keep.size(); ++k) {
    require(keep[k] >= 0 && keep[k] < nfac, "partial_trace: keep index out of range");
    if (k > 0) require(keep[k] > keep[k - 1], "partial_trace: keep list must be strictly increasing");
  }
  std::vector<bool> kept(nfac, false);
  for (int k : keep) kept[k] = true;

  std::vector<int> out_dims, tr_dims;
  for (int f = 0; f < nfac; ++f) (kept[f] ? out_dims : tr_dims).push_back(dims[f]);
  int dout = 1;
  for (int d : out_dims) dout *= d;
  int dtr = rho.space.total() / dout;

  // Strides of each factor in the flat index.
  std::vector<int> stride(nfac, 1);
  for (int f = nfac - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  // Map (kept multi-index, traced multi-index) -> flat index.
  auto flat = [&](int kept_idx, int tr_idx) {
    int idx = 0;
    int kq = kept_idx, tq = tr_idx;
    // Decompose from the last factor backwards.
    for (int f = nfac - 1; f >= 0; --f) {
      int d = dims[f];
      int digit;
      if (kept[f]) {
        digit = kq % d;
        kq /= d;
      } else {
        digit = tq % d;
        tq /= d;
      }
      idx += digit * stride[f];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(dout, dout);
  for (int i = 0; i < dout; ++i)
    for (int j = 0; j < dout; ++j) {
      Cx acc = 0;
      for (int t = 0; t < dtr; ++t) acc += rho.mat(flat(i, t), flat(j, t));
      out(i, j) = acc;
    }
  return DensityMatrix{std::move(out), SpaceSpec{out_dims}};
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix sqrt_psd(const Matrix& m, double neg_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  const auto& ev = es.eigenvalues();
  double min_eig = ev.minCoeff();
  if (min_eig < -neg_tol)
    throw std::invalid_argument("sqrt_psd: matrix not PSD, minimum eigenvalue " +
                                std::to_string(min_eig));
  Eigen::VectorXd root(ev.size());
  for (int i = 0; i < ev.size(); ++i) root(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * root.cast<Cx>().asDiagonal() * es.eigenvectors().adjoint();
}

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.mat.rows() == sigma.mat.rows(), "overlap: dimension mismatch");
  Matrix b = sqrt_psd(rho.mat) * sqrt_psd(sigma.mat);
  // Nuclear norm of sqrt(rho) sqrt(sigma) equals Tr sqrt(sqrt(rho) sigma sqrt(rho)).
  double f = Eigen::JacobiSVD<Matrix>(b).singularValues().sum();
  return f * f;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho.mat), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double p = es.eigenvalues()(i);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s < 0.0 ? 0.0 : s;
}

double binary_entropy(double eps) {
  require(eps >= 0.0 && eps <= 1.0, "binary_entropy: argument outside [0, 1]");
  if (eps == 0.0 || eps == 1.0) return 0.0;
  return -eps * std::log(eps) - (1.0 - eps) * std::log(1.0 - eps);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.mat.rows() == sigma.mat.rows(), "trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho.mat - sigma.mat), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_norm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues().sum();
}

double expectation(const Matrix& op, const DensityMatrix& rho) {
  require(op.rows() == rho.mat.rows(), "expectation: dimension mismatch");
  return trace_of_product(op, rho.mat);
}

double trace_of_product(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum().real();
}

}  // namespace qswitch
