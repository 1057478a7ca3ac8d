#pragma once

#include <cmath>

#include "oqf/random.hpp"

namespace oqf::test {

// Truncated power series, no scaling. Only for moderate norms.
inline ComplexMatrix taylor_exp(const ComplexMatrix& a, int terms = 80) {
  ComplexMatrix sum = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix term = sum;
  for (int k = 1; k <= terms; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    sum += term;
  }
  return sum;
}

// Composite 5-point Gauss-Legendre rule for ∫₀ᵗ e^{sA} M e^{sA†} ds with the
// exponential from the power series.
inline ComplexMatrix quadrature_integral(const ComplexMatrix& a, const ComplexMatrix& m, double t,
                                         int panels = 64) {
  static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                  0.5384693101056831, 0.9061798459386640};
  static const double weights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                    0.4786286704993665, 0.2369268850561891};
  ComplexMatrix sum = ComplexMatrix::Zero(a.rows(), a.cols());
  const double h = t / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * h;
    for (int q = 0; q < 5; ++q) {
      const double s = mid + 0.5 * h * nodes[q];
      const ComplexMatrix e = taylor_exp(s * a);
      sum += (0.5 * h * weights[q]) * (e * m * e.adjoint());
    }
  }
  return sum;
}

// Dissipative drift with `axisDim` purely imaginary eigenvalues: a unitary
// rotation of blockdiag(iH₀, −iH₁ − D₁) with D₁ > 0. The matching noise is
// the same rotation of blockdiag(O, D₁), so O ⩽ M ⩽ −A−A†.
struct PersistentModel {
  ComplexMatrix a;
  ComplexMatrix m;
  ComplexMatrix axisBasis;  // orthonormal columns spanning the undamped space
};

inline PersistentModel persistent_model(Random& rng, Eigen::Index n, Eigen::Index axisDim) {
  const Eigen::Index damped = n - axisDim;
  ComplexMatrix block = ComplexMatrix::Zero(n, n);
  ComplexMatrix noise = ComplexMatrix::Zero(n, n);
  const Complex i(0.0, 1.0);
  if (axisDim > 0) block.topLeftCorner(axisDim, axisDim) = i * rng.hermitian(axisDim);
  if (damped > 0) {
    const ComplexMatrix d =
        rng.positive(damped) + 0.3 * ComplexMatrix::Identity(damped, damped);
    block.bottomRightCorner(damped, damped) = -i * rng.hermitian(damped) - d;
    noise.bottomRightCorner(damped, damped) = d;
  }
  const ComplexMatrix u = rng.unitary(n);
  return {u * block * u.adjoint(), hermitian_part(u * noise * u.adjoint()),
          u.leftCols(axisDim)};
}

}  // namespace oqf::test
