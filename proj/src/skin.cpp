#include "oqf/skin.hpp"

#include <cmath>
#include <sstream>

namespace oqf::skin {

namespace {

constexpr double kPsdTol = 1e-9;

[[noreturn]] void reject(const std::string& what) {
  throw InvalidInput("HatanoNelsonParams: " + what);
}

void require_psd(const ComplexMatrix& m, const char* name) {
  const double lo = hermitian_eigenvalues(m).minCoeff();
  if (lo < -kPsdTol) {
    std::ostringstream os;
    os << "build_bath: " << name << " is not positive semidefinite (min eigenvalue " << lo << ")";
    throw PhysicsError(os.str());
  }
}

}  // namespace

double HatanoNelsonParams::kappa() const { return std::sqrt((gamma - lambda) / (gamma + lambda)); }

double HatanoNelsonParams::x_value() const {
  return x.value_or(std::pow(kappa(), 2 * n - 2) / 4.0);
}

void HatanoNelsonParams::validate() const {
  if (n < 1) reject("n must be >= 1");
  if (!(omega > 0.0)) reject("omega must be > 0");
  if (!(lambda > 0.0)) reject("lambda must be > 0");
  if (!(gamma > lambda)) reject("gamma must be > lambda");
  if (!(aParam > 2.0)) reject("a must be > 2");
  const double upper = std::pow(kappa(), 2 * n - 2) / 2.0;
  const double xv = x_value();
  if (!(xv > 0.0 && xv < upper)) {
    std::ostringstream os;
    os << "x = " << xv << " must lie in (0, kappa^(2n-2)/2) = (0, " << upper << ")";
    reject(os.str());
  }
}

HatanoNelsonMatrices build_matrices(const HatanoNelsonParams& p) {
  p.validate();
  const int n = p.n;
  const Complex i(0.0, 1.0);
  const double kappa = p.kappa();

  HatanoNelsonMatrices out;
  out.f = ComplexMatrix::Zero(n, n);
  out.g = ComplexMatrix::Zero(n, n);
  ComplexMatrix k = ComplexMatrix::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) {
    // (j+1, j) is the δ_{j,k+1} entry, (j, j+1) the δ_{j+1,k} entry.
    out.f(j + 1, j) = 1.0;
    out.f(j, j + 1) = 1.0;
    out.g(j + 1, j) = i;
    out.g(j, j + 1) = -i;
    k(j + 1, j) = p.gamma + p.lambda;
    k(j, j + 1) = -(p.gamma - p.lambda);
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  out.hNH = Complex(p.omega, -p.aParam * p.gamma) * id + k;

  out.vKappa = ComplexMatrix::Zero(n, n);
  ComplexMatrix v_inv = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    out.vKappa(j, j) = std::pow(kappa, j);
    v_inv(j, j) = std::pow(kappa, -j);
  }

  const double root = std::sqrt(p.gamma * p.gamma - p.lambda * p.lambda);
  const ComplexMatrix expected = Complex(p.omega, -p.aParam * p.gamma) * id - i * root * out.g;
  out.similarityResidual = max_abs(out.vKappa * out.hNH * v_inv - expected);
  if (out.similarityResidual > 1e-10) {
    std::ostringstream os;
    os << "build_matrices: similarity residual " << out.similarityResidual << " exceeds 1e-10";
    throw NumericalError(os.str());
  }
  return out;
}

ComplexMatrix localized_target(const HatanoNelsonParams& p) {
  p.validate();
  const double kappa = p.kappa();
  const double x = p.x_value();
  ComplexMatrix target = ComplexMatrix::Zero(p.n, p.n);
  for (int j = 0; j < p.n; ++j) target(j, j) = x * std::pow(kappa, -2 * j);
  return target;
}

SkinBath build_bath(const HatanoNelsonParams& p) {
  const HatanoNelsonMatrices mats = build_matrices(p);
  const int n = p.n;
  const double x = p.x_value();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix target = localized_target(p);
  const ComplexMatrix v_inv = mats.vKappa.inverse();

  const double root = std::sqrt(p.gamma * p.gamma - p.lambda * p.lambda);
  const ComplexMatrix source =
      x * v_inv * (2.0 * p.aParam * p.gamma * id + 2.0 * root * mats.g) * v_inv;

  SkinBath bath;
  bath.e = lyapunov_solve(2.0 * target - id, hermitian_part(source));
  bath.m = 2.0 * bath.e;
  bath.a = -Complex(0.0, 1.0) * mats.hNH - bath.m;

  require_psd(bath.e, "E");
  require_psd(bath.m, "M");
  require_psd(-bath.a - bath.a.adjoint() - bath.m, "-A - A^dagger - M");
  const double residual =
      max_abs(bath.a * target + target * bath.a.adjoint() + bath.m);
  if (residual > 1e-9) {
    std::ostringstream os;
    os << "build_bath: steady-state residual " << residual << " exceeds 1e-9";
    throw PhysicsError(os.str());
  }
  return bath;
}

std::vector<double> steady_profile(const HatanoNelsonParams& p) {
  const SkinBath bath = build_bath(p);
  const GaussianState steady = steady_state(bath.params());
  std::vector<double> profile;
  profile.reserve(p.n);
  for (int j = 0; j < p.n; ++j) {
    ComplexMatrix projector = ComplexMatrix::Zero(p.n, p.n);
    projector(j, j) = 1.0;
    profile.push_back(expectation_quadratic(steady, projector).real());
  }
  return profile;
}

std::vector<double> log_slopes(const std::vector<double>& profile) {
  std::vector<double> out;
  for (std::size_t j = 0; j + 1 < profile.size(); ++j)
    out.push_back(std::log(profile[j + 1]) - std::log(profile[j]));
  return out;
}

SkinBath featureless_bath(const HatanoNelsonParams& p, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw InvalidInput("featureless_choice: delta must lie in (0, 1)");
  const HatanoNelsonMatrices mats = build_matrices(p);
  const Complex scale(0.0, delta / (2.0 * (1.0 - delta)));

  SkinBath bath;
  bath.e = hermitian_part(scale * (mats.hNH - mats.hNH.adjoint()));
  bath.m = 2.0 * bath.e;
  bath.a = -Complex(0.0, 1.0) * mats.hNH - bath.m;
  return bath;
}

ComplexMatrix featureless_choice(const HatanoNelsonParams& p, double delta) {
  const SkinBath bath = featureless_bath(p, delta);
  const ComplexMatrix x = lyapunov_solve(bath.a, bath.m);
  const ComplexMatrix expected =
      (delta / (1.0 + delta)) * ComplexMatrix::Identity(p.n, p.n);
  const double residual = max_abs(x - expected);
  if (residual > 1e-9) {
    std::ostringstream os;
    os << "featureless_choice: steady state deviates from delta/(1+delta) I by " << residual;
    throw PhysicsError(os.str());
  }
  return x;
}

}  // namespace oqf::skin
