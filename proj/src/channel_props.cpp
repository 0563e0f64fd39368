// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0

#include "qswitch/channel_props.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "qswitch/parallel.hpp"
#include "qswitch/util.hpp"

namespace qswitch {

namespace {

// Derives independent stream seeds from (base, index, tag) so that states
// and channels drawn inside one sample never share an engine.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index,
                       std::uint64_t tag) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (2 * index + 1) + tag;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix gaussian_matrix(int rows, int cols, GaussianRng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = Cx(rng.normal(), rng.normal()) / std::sqrt(2.0);
  return g;
}

DensityMatrix ginibre_density(int dim, GaussianRng& rng) {
  Matrix g = gaussian_matrix(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return {hermitize(rho), SpaceSpec{{dim}}};
}

// Thin QR of a Gaussian matrix with the column phases pinned to the sign
// of the R diagonal. Without the phase fix the distribution of Q depends
// on the QR pivoting convention instead of being uniform.
Matrix haar_isometry(int rows, int cols, GaussianRng& rng) {
  Matrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  Matrix r = qr.matrixQR().topRows(cols);
  for (int j = 0; j < cols; ++j) {
    Cx d = r(j, j);
    double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

DensityMatrix with_space(Matrix m, SpaceSpec space) {
  return {std::move(m), std::move(space)};
}

}  // namespace

int QuantumChannel::input_dim() const {
  return kraus.empty() ? 0 : static_cast<int>(kraus.front().cols());
}

int QuantumChannel::output_dim() const {
  return kraus.empty() ? 0 : static_cast<int>(kraus.front().rows());
}

void QuantumChannel::validate(double tol) const {
  if (kraus.empty())
    throw std::invalid_argument("QuantumChannel: no Kraus operators");
  const int in = input_dim();
  const int out = output_dim();
  Matrix sum = Matrix::Zero(in, in);
  for (const Matrix& k : kraus) {
    if (k.rows() != out || k.cols() != in)
      throw std::invalid_argument(
          "QuantumChannel: Kraus operators have mismatched shapes");
    sum += k.adjoint() * k;
  }
  double err = (sum - Matrix::Identity(in, in)).cwiseAbs().maxCoeff();
  if (err > tol)
    throw std::invalid_argument(
        "QuantumChannel: completeness sum deviates from identity by " +
        std::to_string(err));
}

void SampleConfig::validate() const {
  if (dim < 2) throw std::invalid_argument("SampleConfig: dim must be >= 2");
  if (env_dim < 1)
    throw std::invalid_argument("SampleConfig: env_dim must be >= 1");
  if (count < 1)
    throw std::invalid_argument("SampleConfig: count must be >= 1");
}

DensityMatrix random_density(const SampleConfig& cfg) {
  cfg.validate();
  GaussianRng rng(cfg.seed);
  return ginibre_density(cfg.dim, rng);
}

QuantumChannel random_channel(const SampleConfig& cfg) {
  cfg.validate();
  GaussianRng rng(cfg.seed);
  const int d = cfg.dim;
  const int e = cfg.env_dim;
  // Columns of the isometry live in system x environment with the system
  // index slowest; row i*e + k of column j is <i, k| V |j>.
  Matrix v = haar_isometry(d * e, d, rng);
  QuantumChannel ch;
  ch.kraus.reserve(static_cast<std::size_t>(e));
  for (int k = 0; k < e; ++k) {
    Matrix kr(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) kr(i, j) = v(i * e + k, j);
    ch.kraus.push_back(std::move(kr));
  }
  return ch;
}

DensityMatrix apply_channel(const QuantumChannel& ch,
                            const DensityMatrix& rho) {
  if (ch.kraus.empty())
    throw std::invalid_argument("apply_channel: no Kraus operators");
  if (ch.input_dim() != rho.mat.rows())
    throw std::invalid_argument(
        "apply_channel: channel input dimension does not match the state");
  const int out = ch.output_dim();
  Matrix result = Matrix::Zero(out, out);
  for (const Matrix& k : ch.kraus) result += k * rho.mat * k.adjoint();
  return {hermitize(result), SpaceSpec{{out}}};
}

QuantumChannel measure_copy_cloner(int dim, int food_dim) {
  if (dim < 2)
    throw std::invalid_argument("measure_copy_cloner: dim must be >= 2");
  if (food_dim < 1)
    throw std::invalid_argument("measure_copy_cloner: food_dim must be >= 1");
  QuantumChannel ch;
  ch.kraus.reserve(static_cast<std::size_t>(dim) * food_dim);
  // One Kraus operator per (outcome, food basis state): project the system
  // onto |k>, discard the food factor, and emit |k>|k>.
  for (int k = 0; k < dim; ++k) {
    for (int f = 0; f < food_dim; ++f) {
      Matrix op = Matrix::Zero(dim * dim, dim * food_dim);
      op(k * dim + k, k * food_dim + f) = 1.0;
      ch.kraus.push_back(std::move(op));
    }
  }
  return ch;
}

QuantumChannel depolarizing_qubit(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("depolarizing_qubit: p must be in [0, 1]");
  QuantumChannel ch;
  ch.kraus.push_back(std::sqrt(1.0 - 0.75 * p) * Matrix::Identity(2, 2));
  ch.kraus.push_back(std::sqrt(0.25 * p) * pauli_x());
  ch.kraus.push_back(std::sqrt(0.25 * p) * pauli_y());
  ch.kraus.push_back(std::sqrt(0.25 * p) * pauli_z());
  return ch;
}

AxiomReport check_axioms(const SampleConfig& cfg) {
  cfg.validate();
  auto worker = [&](std::size_t i) {
    AxiomSample s;
    s.index = static_cast<std::uint64_t>(i);
    GaussianRng state_rng(mix_seed(cfg.seed, s.index, 1));
    GaussianRng channel_rng(mix_seed(cfg.seed, s.index, 2));

    DensityMatrix a = ginibre_density(cfg.dim, state_rng);
    DensityMatrix b = ginibre_density(cfg.dim, state_rng);
    DensityMatrix c = ginibre_density(cfg.dim, state_rng);
    DensityMatrix d = ginibre_density(cfg.dim, state_rng);

    const int sys = cfg.dim;
    Matrix v = haar_isometry(sys * cfg.env_dim, sys, channel_rng);
    QuantumChannel ch;
    for (int k = 0; k < cfg.env_dim; ++k) {
      Matrix kr(sys, sys);
      for (int r = 0; r < sys; ++r)
        for (int cidx = 0; cidx < sys; ++cidx)
          kr(r, cidx) = v(r * cfg.env_dim + k, cidx);
      ch.kraus.push_back(std::move(kr));
    }

    double f_ab = overlap(a, b);
    s.identity_error = std::abs(overlap(a, a) - 1.0);
    s.range_error = std::max(0.0, std::max(-f_ab, f_ab - 1.0));

    DensityMatrix ac = tensor(a, c);
    DensityMatrix bd = tensor(b, d);
    double f_joint = overlap(ac, bd);
    double f_prod = f_ab * overlap(c, d);
    s.factorization_error = std::abs(f_joint - f_prod) / f_prod;

    s.monotonicity_margin =
        overlap(apply_channel(ch, a), apply_channel(ch, b)) - f_ab;
    return s;
  };

  AxiomReport report;
  report.samples = parallel_map(static_cast<std::size_t>(cfg.count), worker);
  report.min_monotonicity_margin = report.samples.front().monotonicity_margin;
  for (const AxiomSample& s : report.samples) {
    report.max_identity_error =
        std::max(report.max_identity_error, s.identity_error);
    report.max_range_error = std::max(report.max_range_error, s.range_error);
    report.max_factorization_error =
        std::max(report.max_factorization_error, s.factorization_error);
    report.min_monotonicity_margin =
        std::min(report.min_monotonicity_margin, s.monotonicity_margin);
    if (s.monotonicity_margin < -1e-9) ++report.monotonicity_violations;
  }
  return report;
}

CloneReport cloning_chain(const DensityMatrix& rho,
                          const DensityMatrix& rho_prime,
                          const QuantumChannel& cloner,
                          const DensityMatrix& food) {
  cloner.validate();
  const int d = static_cast<int>(rho.mat.rows());
  if (rho_prime.mat.rows() != d)
    throw std::invalid_argument("cloning_chain: state dimensions differ");
  if (cloner.input_dim() != d * food.mat.rows())
    throw std::invalid_argument(
        "cloning_chain: cloner input does not match state x food");
  const int out = cloner.output_dim();
  if (out % (d * d) != 0)
    throw std::invalid_argument(
        "cloning_chain: cloner output does not contain two system factors");
  const int rest = out / (d * d);

  CloneReport rep;
  rep.input_overlap = overlap(rho, rho_prime);

  DensityMatrix out_a = apply_channel(cloner, tensor(rho, food));
  DensityMatrix out_b = apply_channel(cloner, tensor(rho_prime, food));
  rep.output_overlap = overlap(out_a, out_b);

  SpaceSpec triple{{d, d, rest}};
  auto deficit_of = [&](const DensityMatrix& produced,
                        const DensityMatrix& source) {
    DensityMatrix shaped = with_space(produced.mat, triple);
    DensityMatrix ideal = tensor(source, source);
    if (rest > 1) {
      DensityMatrix residual = partial_trace(shaped, {2});
      ideal = tensor(ideal, residual);
    }
    return trace_distance(shaped, with_space(ideal.mat, triple));
  };
  rep.deficit = std::max(deficit_of(out_a, rho), deficit_of(out_b, rho_prime));
  rep.exact = rep.deficit < 1e-8;
  return rep;
}

RecoveryReport recovery_chain(
    const QuantumChannel& noise, const QuantumChannel& recovery,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs) {
  noise.validate();
  recovery.validate();
  if (recovery.input_dim() != noise.output_dim())
    throw std::invalid_argument(
        "recovery_chain: recovery input does not match noise output");
  RecoveryReport report;
  report.links.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    RecoveryLink link;
    link.f_in = overlap(a, b);
    DensityMatrix na = apply_channel(noise, a);
    DensityMatrix nb = apply_channel(noise, b);
    link.f_noisy = overlap(na, nb);
    DensityMatrix ra = apply_channel(recovery, na);
    DensityMatrix rb = apply_channel(recovery, nb);
    link.f_recovered = overlap(ra, rb);
    link.recovery_error =
        std::max(trace_distance(ra, a), trace_distance(rb, b));
    report.links.push_back(link);
  }
  return report;
}

ReplicatedRecovery replicated_recovery(const QuantumChannel& noise,
                                       const QuantumChannel& recovery,
                                       const DensityMatrix& rho,
                                       const DensityMatrix& rho_prime,
                                       const DensityMatrix& sigma,
                                       const DensityMatrix& sigma_prime) {
  noise.validate();
  recovery.validate();
  const int d = static_cast<int>(rho.mat.rows());
  if (rho_prime.mat.rows() != d)
    throw std::invalid_argument("replicated_recovery: state dimensions differ");
  if (sigma_prime.mat.rows() != sigma.mat.rows())
    throw std::invalid_argument(
        "replicated_recovery: remainder dimensions differ");
  if (noise.input_dim() != d * d * sigma.mat.rows())
    throw std::invalid_argument(
        "replicated_recovery: noise input does not match the replicated space");
  if (recovery.input_dim() != noise.output_dim())
    throw std::invalid_argument(
        "replicated_recovery: recovery input does not match noise output");
  const int out = recovery.output_dim();
  if (out % d != 0)
    throw std::invalid_argument(
        "replicated_recovery: recovery output does not contain the system");
  const int rest = out / d;

  auto run = [&](const DensityMatrix& s, const DensityMatrix& w) {
    DensityMatrix in = tensor(tensor(s, s), w);
    return apply_channel(recovery, apply_channel(noise, in));
  };
  DensityMatrix out_a = run(rho, sigma);
  DensityMatrix out_b = run(rho_prime, sigma_prime);

  ReplicatedRecovery rep;
  rep.f_in = overlap(rho, rho_prime);
  rep.f_out = overlap(out_a, out_b);
  rep.lower_bound = rep.f_in * rep.f_in * overlap(sigma, sigma_prime);

  SpaceSpec split{{d, rest}};
  auto deficit_of = [&](const DensityMatrix& produced,
                        const DensityMatrix& source) {
    DensityMatrix shaped = with_space(produced.mat, split);
    DensityMatrix ideal = source;
    if (rest > 1) ideal = tensor(source, partial_trace(shaped, {1}));
    return trace_distance(shaped, with_space(ideal.mat, split));
  };
  rep.product_deficit =
      std::max(deficit_of(out_a, rho), deficit_of(out_b, rho_prime));
  return rep;
}

}  // namespace qswitch
