#include "oqf/random.hpp"

#include <cmath>

namespace oqf {

double Random::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Random::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

ComplexMatrix Random::complex_matrix(Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix out(rows, cols);
  // Fill in a fixed (row-major) order so the draw sequence is explicit.
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = uniform(-1.0, 1.0);
      const double im = uniform(-1.0, 1.0);
      out(i, j) = Complex(re, im);
    }
  return out;
}

ComplexVector Random::complex_vector(Eigen::Index n) { return complex_matrix(n, 1).col(0); }

Eigen::MatrixXd Random::real_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = uniform(-1.0, 1.0);
  return out;
}

ComplexMatrix Random::hermitian(Eigen::Index n) { return hermitian_part(complex_matrix(n)); }

ComplexMatrix Random::unitary(Eigen::Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(complex_matrix(n));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

ComplexMatrix Random::positive(Eigen::Index n) {
  const ComplexMatrix x = complex_matrix(n);
  return hermitian_part(x * x.adjoint() / static_cast<double>(n));
}

ComplexMatrix Random::stable(Eigen::Index n) {
  const ComplexMatrix x = complex_matrix(n);
  return x - (spectral_norm(x) + 0.5) * ComplexMatrix::Identity(n, n);
}

PhysicalModel Random::physical_model(Eigen::Index n) {
  PhysicalModel model;
  model.h = hermitian(n);
  for (Eigen::Index k = 0; k < n; ++k) model.lossVectors.push_back(0.7 * complex_vector(n));
  model.gainVectors.push_back(0.5 * complex_vector(n));
  return model;
}

LiouvillianParams Random::gksl_params(Eigen::Index n) { return params_from_model(physical_model(n)); }

GaussianState Random::correlation_state(Eigen::Index n, double lo, double hi) {
  const ComplexMatrix u = unitary(n);
  Eigen::VectorXd r(n);
  for (Eigen::Index j = 0; j < n; ++j) r(j) = uniform(lo, hi);
  return GaussianState(hermitian_part(u * r.cast<Complex>().asDiagonal() * u.adjoint()));
}

}  // namespace oqf
