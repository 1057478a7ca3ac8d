#pragma once

#include <cstdint>
#include <random>

#include "oqf/gaussian.hpp"

namespace oqf {

/// Seeded source of random test instances. Draws go through the raw
/// mt19937_64 output so a given seed yields the same instances on every
/// standard library.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);

  /// Entries with real and imaginary parts uniform in [-1, 1).
  ComplexMatrix complex_matrix(Eigen::Index rows, Eigen::Index cols);
  ComplexMatrix complex_matrix(Eigen::Index n) { return complex_matrix(n, n); }
  ComplexVector complex_vector(Eigen::Index n);
  Eigen::MatrixXd real_matrix(Eigen::Index rows, Eigen::Index cols);

  ComplexMatrix hermitian(Eigen::Index n);
  ComplexMatrix unitary(Eigen::Index n);
  /// X X† / n, positive semidefinite.
  ComplexMatrix positive(Eigen::Index n);
  /// Random matrix shifted so every eigenvalue has real part ≤ -0.5.
  ComplexMatrix stable(Eigen::Index n);

  /// Hermitian H with n loss channels and one gain channel.
  PhysicalModel physical_model(Eigen::Index n);
  /// params_from_model(physical_model(n)); strictly damped with probability one.
  LiouvillianParams gksl_params(Eigen::Index n);
  /// U diag(r) U† with r_j uniform in [lo, hi].
  GaussianState correlation_state(Eigen::Index n, double lo = 0.05, double hi = 0.95);

 private:
  std::mt19937_64 engine_;
};

}  // namespace oqf
