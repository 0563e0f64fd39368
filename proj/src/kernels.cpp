// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include "qswitch/kernels.hpp"

#include "qswitch/parallel.hpp"

namespace qswitch {

JumpKernel JumpKernel::build(
    const std::vector<std::pair<Matrix, double>>& jumps, int dim,
    double drop_tol) {
  JumpKernel k;
  k.dim_ = dim;
  k.gsum_ = Matrix::Zero(dim, dim);
  for (const auto& [op, rate] : jumps) {
    double peak = op.cwiseAbs().maxCoeff();
    double cut = drop_tol * peak;
    Eigen::SparseMatrix<Cx> sp(dim, dim);
    std::vector<Eigen::Triplet<Cx>> trips;
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i)
        if (std::abs(op(i, j)) > cut) trips.emplace_back(i, j, op(i, j));
    sp.setFromTriplets(trips.begin(), trips.end());
    k.ops_.push_back(sp);
    k.ops_dag_.push_back(Eigen::SparseMatrix<Cx>(sp.adjoint()));
    k.rates_.push_back(rate);
    k.gsum_ += rate * (Matrix(sp.adjoint()) * Matrix(sp));
  }
  k.terms_.assign(k.ops_.size(), Matrix::Zero(dim, dim));
  k.scratch_.assign(k.ops_.size(), Matrix::Zero(dim, dim));
  k.max_rate_ = k.gsum_.rows() > 0 ? k.gsum_.diagonal().real().maxCoeff() : 0.0;
  return k;
}

void JumpKernel::accumulate(const Matrix& rho, Matrix& out) const {
  out.noalias() = -0.5 * (gsum_ * rho);
  out.noalias() -= 0.5 * (rho * gsum_);
  // Fixed reduction order regardless of how the terms were produced.
  for (const auto& t : terms_) out += t;
}

void JumpKernel::rhs_serial(const Matrix& rho, Matrix& out) const {
  serial_for_index(ops_.size(), [&](std::size_t i) {
    scratch_[i].noalias() = ops_[i] * rho;
    terms_[i].noalias() = rates_[i] * (scratch_[i] * ops_dag_[i]);
  });
  accumulate(rho, out);
}

void JumpKernel::rhs_parallel(const Matrix& rho, Matrix& out) const {
  parallel_for_index(ops_.size(), [&](std::size_t i) {
    scratch_[i].noalias() = ops_[i] * rho;
    terms_[i].noalias() = rates_[i] * (scratch_[i] * ops_dag_[i]);
  });
  accumulate(rho, out);
}

}  // namespace qswitch
