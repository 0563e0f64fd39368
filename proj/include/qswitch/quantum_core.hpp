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

#ifndef QSWITCH_QUANTUM_CORE_HPP
#define QSWITCH_QUANTUM_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qswitch {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default validation tolerances for state types.
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

// Thrown when a truncated-space construction loses more norm than allowed.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Ordered list of tensor-factor dimensions. The flattened index convention is
// row-major over factors: factor 0 is the slowest index.
struct SpaceSpec {
  std::vector<int> dims;

  SpaceSpec() = default;
  SpaceSpec(std::initializer_list<int> d) : dims(d) {}
  explicit SpaceSpec(std::vector<int> d) : dims(std::move(d)) {}

  int total() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
  }
  bool operator==(const SpaceSpec&) const = default;
};

struct StateVector {
  Vector amp;
  SpaceSpec space;

  // Throws unless the amplitude vector matches the space and has unit norm.
  void validate(double norm_tol = kNormTol) const;
};

struct DensityMatrix {
  Matrix mat;
  SpaceSpec space;

  // Throws unless Hermitian, unit trace and positive semidefinite within the
  // given tolerances.
  void validate(double herm_tol = kHermTol, double trace_tol = kTraceTol,
                double psd_tol = kPsdTol) const;
};

// ---- elementary operators ----------------------------------------------

Matrix annihilation(int cutoff);
Matrix number_operator(int cutoff);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix kron(const Matrix& a, const Matrix& b);

// exp(alpha a^dag - conj(alpha) a), unitary on the truncated space.
Matrix displacement(Cx alpha, int cutoff);

// ---- state constructors -------------------------------------------------

// Coherent state with amplitudes exp(-|alpha|^2/2) alpha^n / sqrt(n!),
// renormalized after truncation. Throws TruncationError when the norm lost to
// truncation (before renormalization) exceeds deficit_tol.
StateVector coherent_state(Cx alpha, int cutoff, double deficit_tol = 1e-12);

// Geometric-weight oscillator state with mean occupation nbar, renormalized on
// the truncated space.
DensityMatrix thermal_oscillator(double nbar, int cutoff);

// exp(-H/kT)/Z. kT = 0 returns the normalized projector onto the ground
// eigenspace (eigenvalues within 1e-10 * scale of the minimum).
DensityMatrix gibbs_state(const Matrix& h, double kT, const SpaceSpec& space);

DensityMatrix density_from_state(const StateVector& psi);
DensityMatrix maximally_mixed(int dim);

// ---- composition --------------------------------------------------------

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Trace out all factors not listed in `keep`. Kept factors stay in their
// original relative order; `keep` must be strictly increasing and in range.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// ---- scalar functionals -------------------------------------------------

// State overlap: the squared Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2,
// evaluated as the squared nuclear norm of sqrt(rho) sqrt(sigma). Equals
// |<psi|phi>|^2 on pure states. Inputs must be PSD within kPsdTol; eigenvalue
// noise below that is clamped to zero before the square roots.
double overlap(const DensityMatrix& rho, const DensityMatrix& sigma);

// Von Neumann entropy in nats. Eigenvalues <= 0 contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);

// -e ln e - (1-e) ln(1-e) on [0,1], zero at the endpoints.
double binary_entropy(double eps);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Sum of singular values.
double trace_norm(const Matrix& m);

// Re Tr(op rho) for Hermitian op.
double expectation(const Matrix& op, const DensityMatrix& rho);

// ---- Hermitian matrix helpers ------------------------------------------

Matrix hermitize(const Matrix& m);

// PSD square root by eigendecomposition; negative eigenvalues above -neg_tol
// are clamped to zero, anything below throws.
Matrix sqrt_psd(const Matrix& m, double neg_tol = kPsdTol);

double trace_of_product(const Matrix& a, const Matrix& b);

}  // namespace qswitch

#endif  // QSWITCH_QUANTUM_CORE_HPP
