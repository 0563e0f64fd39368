// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include "qswitch/util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qswitch {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// Difference between the 5th- and 4th-order weights, used for the error
// estimate (the b7 entry of the embedded method is 1/40).
constexpr double kE1 = kB1 - 5179.0 / 57600.0;
constexpr double kE3 = kB3 - 7571.0 / 16695.0;
constexpr double kE4 = kB4 - 393.0 / 640.0;
constexpr double kE5 = kB5 + 92097.0 / 339200.0;
constexpr double kE6 = kB6 - 187.0 / 2100.0;
constexpr double kE7 = -1.0 / 40.0;

}  // namespace

Eigen::VectorXcd integrate_ode(const OdeRhs& f, Eigen::VectorXcd y0, double t0,
                               double t1, const OdeOptions& opts) {
  if (t1 < t0) throw std::invalid_argument("integrate_ode: t1 < t0");
  if (t1 == t0) return y0;

  const auto n = y0.size();
  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  Eigen::VectorXcd y = std::move(y0), ytmp(n), ynew(n), err(n);

  double t = t0;
  double h = std::min(opts.initial_step, t1 - t0);
  double prev_err_norm = 1.0;
  bool have_k1 = false;

  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    if (t >= t1) return y;
    h = std::min(h, t1 - t);
    if (h < opts.min_step)
      throw std::runtime_error("integrate_ode: step size underflow");

    if (!have_k1) f(t, y, k1);
    ytmp = y + h * kA21 * k1;
    f(t + h / 5.0, ytmp, k2);
    ytmp = y + h * (kA31 * k1 + kA32 * k2);
    f(t + 3.0 * h / 10.0, ytmp, k3);
    ytmp = y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3);
    f(t + 4.0 * h / 5.0, ytmp, k4);
    ytmp = y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
    f(t + 8.0 * h / 9.0, ytmp, k5);
    ytmp = y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
    f(t + h, ytmp, k6);
    ynew = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    f(t + h, ynew, k7);

    err = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double scale = opts.abs_tol +
                     opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double r = std::abs(err[i]) / scale;
      acc += r * r;
    }
    double err_norm = std::sqrt(acc / static_cast<double>(n));

    if (err_norm <= 1.0) {
      t += h;
      y.swap(ynew);
      k1.swap(k7);  // first-same-as-last
      have_k1 = true;
      if (opts.on_step) opts.on_step(t, y);
      double grow = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2) *
                    std::pow(prev_err_norm, 0.04);
      prev_err_norm = std::max(err_norm, 1e-10);
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      have_k1 = true;  // k1 still holds the derivative at (t, y)
      h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 1.0);
    }
  }
  throw std::runtime_error("integrate_ode: step budget exhausted");
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need two points with equal sizes");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_max: lo >= hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double GaussianRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] x [0,1).
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace qswitch
