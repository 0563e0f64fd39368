// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Small numerical utilities shared across the library: an adaptive
// Dormand-Prince integrator, least-squares line fits, a golden-section
// maximizer, a portable Gaussian RNG, and a string hash for run manifests.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qswitch {

// Right-hand side of a first-order complex ODE y' = f(t, y).
using OdeRhs =
    std::function<void(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy)>;

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  std::size_t max_steps = 2000000;
  // Invoked after every accepted step; may inspect the running solution.
  std::function<void(double t, const Eigen::VectorXcd& y)> on_step;
};

// Integrates y' = f(t, y) from t0 to t1 with the Dormand-Prince 5(4) pair
// and PI step control. Throws std::runtime_error when the controller cannot
// reach t1 within the step budget.
Eigen::VectorXcd integrate_ode(const OdeRhs& f, Eigen::VectorXcd y0, double t0,
                               double t1, const OdeOptions& opts = {});

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

// Ordinary least squares for y = intercept + slope * x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Maximizes a unimodal function on [lo, hi]; returns the abscissa.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-12);

// FNV-1a, used to fingerprint run configurations in CSV headers.
std::uint64_t fnv1a64(std::string_view data);

// Deterministic Gaussian/uniform source. std::normal_distribution is
// implementation-defined, so Box-Muller is done by hand to keep seeded
// output byte-identical across platforms.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qswitch
