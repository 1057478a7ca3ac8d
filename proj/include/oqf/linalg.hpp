#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "oqf/errors.hpp"

namespace oqf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Small helpers shared by every module.

void require_square(const ComplexMatrix& a, std::string_view what);
void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b, std::string_view what);
void require_finite(const ComplexMatrix& a, std::string_view what);

/// Largest absolute entry; the residual norm used throughout the verification code.
double max_abs(const ComplexMatrix& a);

/// Induced 2-norm (largest singular value).
double spectral_norm(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol);
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Ascending eigenvalues of the Hermitian part of `a`.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// ---------------------------------------------------------------------------
// Kernels.

/// e^a by scaling and squaring with diagonal Padé approximants of degree
/// 3, 5, 7, 9 or 13 (Higham 2005 thresholds).
ComplexMatrix mat_exp(const ComplexMatrix& a);

/// e^{tA} together with the integral of e^{sA} M e^{sA†} over [0, t].
struct PropagatorIntegral {
  ComplexMatrix propagator;
  ComplexMatrix integral;
};

/// Computes both pieces at once. The block exponential of [[A, M], [O, -A†]]
/// is evaluated on a short step h = t / 2^k with h‖A‖ ≤ 1 and then doubled
/// k times via I(2h) = I(h) + e^{hA} I(h) e^{hA†}, which avoids the
/// cancellation the plain block formula suffers for large t‖A‖.
PropagatorIntegral propagator_and_integral(const ComplexMatrix& a, const ComplexMatrix& m, double t);

ComplexMatrix van_loan_integral(const ComplexMatrix& a, const ComplexMatrix& m, double t);

/// Solves A T + T A† = -M through the n²×n² Kronecker system.
/// Throws NumericalError naming the offending pair when λ_i + conj(λ_j) ≈ 0.
ComplexMatrix lyapunov_solve(const ComplexMatrix& a, const ComplexMatrix& m);

struct SpectralSplit {
  ComplexMatrix p0;      // orthogonal projector onto the imaginary-axis eigenspaces
  ComplexMatrix a0;      // A P0
  ComplexMatrix aMinus;  // A - A P0
  std::vector<Complex> imaginaryEigenvalues;
  double reTol = 0.0;
  // Some eigenvalue had reTol < |Re λ| < 2 reTol; the classification is fragile.
  bool ambiguous = false;
};

/// Splits a dissipative generator (-A - A† ⩾ O) into its persistent part on
/// the imaginary axis and its strictly damped remainder.
/// `reTol` defaults to 1e-9 ‖A‖₂.
SpectralSplit spectral_split(const ComplexMatrix& a, std::optional<double> reTol = std::nullopt);

}  // namespace oqf
