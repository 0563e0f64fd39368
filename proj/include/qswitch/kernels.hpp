// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// The dissipator right-hand side, the hot loop of every trajectory. Jump
// operators are stored sparse (eigenoperators have O(dim) entries), the
// anticommutator part uses the precomputed dense sum. rhs() evaluates the
// per-jump terms into per-index buffers, concurrently in the parallel
// variant, and always reduces them in fixed index order, so serial and
// parallel results are bitwise identical.

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "qswitch/quantum_core.hpp"

namespace qswitch {

class JumpKernel {
 public:
  // drop_tol is relative to the largest magnitude entry of each operator;
  // entries below it are not stored.
  static JumpKernel build(const std::vector<std::pair<Matrix, double>>& jumps,
                          int dim, double drop_tol = 1e-14);

  // out = sum_k rate_k (A_k rho A_k^dag) - (G rho + rho G)/2 with
  // G = sum_k rate_k A_k^dag A_k. Not safe for concurrent calls on the
  // same kernel object (shared buffers); trajectories are sequential.
  void rhs_serial(const Matrix& rho, Matrix& out) const;
  void rhs_parallel(const Matrix& rho, Matrix& out) const;

  int dim() const { return dim_; }
  std::size_t jump_count() const { return ops_.size(); }
  // Largest diagonal entry of G: the fastest total outflow rate.
  double max_rate() const { return max_rate_; }
  const Matrix& gsum() const { return gsum_; }

 private:
  void accumulate(const Matrix& rho, Matrix& out) const;

  int dim_ = 0;
  double max_rate_ = 0.0;
  std::vector<Eigen::SparseMatrix<Cx>> ops_, ops_dag_;
  std::vector<double> rates_;
  Matrix gsum_;
  mutable std::vector<Matrix> terms_, scratch_;
};

}  // namespace qswitch
