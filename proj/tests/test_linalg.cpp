#include <doctest.h>

#include <numbers>

#include "oqf/linalg.hpp"
#include "support.hpp"

using namespace oqf;
using oqf::test::quadrature_integral;
using oqf::test::taylor_exp;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix diag(std::initializer_list<Complex> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (Complex x : values) v(k++) = x;
  return v.asDiagonal();
}

}  // namespace

TEST_CASE("mat_exp of the zero matrix is the identity") {
  CHECK(max_abs(mat_exp(ComplexMatrix::Zero(2, 2)) - identity(2)) == 0.0);
}

TEST_CASE("mat_exp of a quarter-turn generator") {
  ComplexMatrix a(2, 2);
  a << 0.0, -std::numbers::pi / 2, std::numbers::pi / 2, 0.0;
  ComplexMatrix expected(2, 2);
  expected << 0.0, -1.0, 1.0, 0.0;
  CHECK(max_abs(mat_exp(a) - expected) < 1e-15);
}

TEST_CASE("mat_exp matches the power series for small random matrices") {
  Random rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a = rng.complex_matrix(4);
    a /= spectral_norm(a);
    CHECK(max_abs(mat_exp(a) - taylor_exp(a, 40)) < 1e-12);
  }
}

TEST_CASE("mat_exp is exact on nilpotent and diagonal inputs") {
  ComplexMatrix n = ComplexMatrix::Zero(3, 3);
  n(0, 1) = 2.0;
  n(1, 2) = 3.0;
  ComplexMatrix expected = identity(3) + n;
  expected(0, 2) = 3.0;
  CHECK(max_abs(mat_exp(n) - expected) < 1e-14);

  const ComplexMatrix d = diag({Complex(-30.0, 1.0), Complex(0.5, -2.0), 7.0});
  const ComplexMatrix e = mat_exp(d);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(e(j, j) - std::exp(d(j, j))) < 1e-13 * std::abs(std::exp(d(j, j))));
}

TEST_CASE("mat_exp of commuting matrices factorizes") {
  Random rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix x = rng.complex_matrix(4);
    const ComplexMatrix a = 0.3 * x + 0.1 * x * x;
    const ComplexMatrix b = identity(4) * Complex(0.2, -0.4) - 0.5 * x * x * x / 3.0;
    CHECK(max_abs(mat_exp(a + b) - mat_exp(a) * mat_exp(b)) < 1e-10);
  }
}

TEST_CASE("mat_exp rejects bad input") {
  CHECK_THROWS_AS(mat_exp(ComplexMatrix::Zero(2, 3)), InvalidInput);
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(mat_exp(a), InvalidInput);
}

TEST_CASE("van_loan_integral closed forms") {
  Random rng(13);
  const ComplexMatrix m = rng.complex_matrix(3);
  CHECK(max_abs(van_loan_integral(ComplexMatrix::Zero(3, 3), m, 3.0) - 3.0 * m) < 1e-13);

  const double gamma = 0.7, mu = 1.3, t = 2.2;
  const ComplexMatrix a = ComplexMatrix::Constant(1, 1, -gamma);
  const ComplexMatrix mm = ComplexMatrix::Constant(1, 1, mu);
  const double expected = mu * (1.0 - std::exp(-2.0 * gamma * t)) / (2.0 * gamma);
  CHECK(std::abs(van_loan_integral(a, mm, t)(0, 0) - expected) < 1e-14);
}

TEST_CASE("van_loan_integral matches quadrature") {
  Random rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a = rng.stable(3);
    const ComplexMatrix m = rng.positive(3);
    const ComplexMatrix integral = van_loan_integral(a, m, 1.0);
    CHECK(max_abs(integral - quadrature_integral(a, m, 1.0)) < 1e-9);
    CHECK(is_hermitian(integral, 0.0));
  }
}

TEST_CASE("van_loan_integral cocycle identity") {
  Random rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = rng.complex_matrix(3) - identity(3);
    const ComplexMatrix m = rng.complex_matrix(3);
    const double t = 0.4, s = 0.9;
    const ComplexMatrix et = mat_exp(t * a);
    const ComplexMatrix rhs =
        van_loan_integral(a, m, t) + et * van_loan_integral(a, m, s) * et.adjoint();
    CHECK(max_abs(van_loan_integral(a, m, t + s) - rhs) < 1e-10);
  }
}

TEST_CASE("van_loan_integral rejects bad input") {
  CHECK_THROWS_AS(van_loan_integral(identity(2), identity(3), 1.0), InvalidInput);
  CHECK_THROWS_AS(van_loan_integral(identity(2), identity(2), -1.0), InvalidInput);
}

TEST_CASE("lyapunov_solve closed forms") {
  Random rng(16);
  const ComplexMatrix m = rng.complex_matrix(3);
  CHECK(max_abs(lyapunov_solve(-0.5 * identity(3), m) - m) < 1e-14);

  const ComplexVector lambda = (ComplexVector(3) << Complex(-1.0, 2.0), Complex(-0.3, 0.0),
                                Complex(-2.0, -1.0))
                                   .finished();
  const ComplexMatrix t = lyapunov_solve(lambda.asDiagonal(), m);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(t(j, k) + m(j, k) / (lambda(j) + std::conj(lambda(k)))) < 1e-14);
}

TEST_CASE("lyapunov_solve equals the long-time integral") {
  Random rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a = rng.stable(3);
    const ComplexMatrix m = rng.positive(3);
    CHECK(max_abs(lyapunov_solve(a, m) - van_loan_integral(a, m, 80.0)) < 1e-8);
  }
}

TEST_CASE("lyapunov_solve residual on random stable instances") {
  Random rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 7;
    const ComplexMatrix a = rng.stable(n);
    const ComplexMatrix m = rng.complex_matrix(n);
    const ComplexMatrix t = lyapunov_solve(a, m);
    CHECK(max_abs(a * t + t * a.adjoint() + m) <= 1e-10 * (1.0 + max_abs(m)));
  }
}

TEST_CASE("lyapunov_solve reports a near-resonant pair") {
  const ComplexMatrix a = diag({Complex(0.0, 1.0), -1.0});
  try {
    lyapunov_solve(a, identity(2));
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("resonan") != std::string::npos);
  }
}

TEST_CASE("spectral_split: conservative generator") {
  Random rng(19);
  const ComplexMatrix a = I * rng.hermitian(3);
  const SpectralSplit s = spectral_split(a);
  CHECK(max_abs(s.p0 - identity(3)) < 1e-12);
  CHECK(max_abs(s.a0 - a) < 1e-12);
  CHECK(max_abs(s.aMinus) < 1e-12);
  CHECK(s.imaginaryEigenvalues.size() == 3);
}

TEST_CASE("spectral_split: fully damped generator") {
  Random rng(20);
  const ComplexMatrix a = rng.stable(3);
  const SpectralSplit s = spectral_split(a);
  CHECK(max_abs(s.p0) == 0.0);
  CHECK(max_abs(s.a0) == 0.0);
  CHECK(max_abs(s.aMinus - a) == 0.0);
  CHECK(s.imaginaryEigenvalues.empty());
}

TEST_CASE("spectral_split: block-diagonal example") {
  const SpectralSplit s = spectral_split(diag({I, -1.0}));
  CHECK(max_abs(s.p0 - diag({1.0, 0.0})) < 1e-14);
  CHECK(max_abs(s.a0 - diag({I, 0.0})) < 1e-14);
  CHECK(max_abs(s.aMinus - diag({0.0, -1.0})) < 1e-14);
  REQUIRE(s.imaginaryEigenvalues.size() == 1);
  CHECK(std::abs(s.imaginaryEigenvalues[0] - I) < 1e-14);
}

TEST_CASE("spectral_split invariants on mixed generators") {
  Random rng(21);
  for (Eigen::Index axis = 1; axis <= 3; ++axis) {
    const auto model = oqf::test::persistent_model(rng, 4, axis);
    const SpectralSplit s = spectral_split(model.a);
    CHECK(s.imaginaryEigenvalues.size() == static_cast<std::size_t>(axis));
    CHECK(max_abs(s.p0 * s.p0 - s.p0) < 1e-10);
    CHECK(max_abs(s.p0 - s.p0.adjoint()) < 1e-10);
    CHECK(max_abs(commutator(model.a, s.p0)) < 1e-10);
    CHECK(max_abs(s.a0 + s.aMinus - model.a) < 1e-15);
    CHECK(max_abs(commutator(s.a0, s.aMinus)) < 1e-10);
    const ComplexMatrix expected = model.axisBasis * model.axisBasis.adjoint();
    CHECK(max_abs(s.p0 - expected) < 1e-9);

    // e^{tA₋} → P₀ on the damped decay time scale.
    double slowest = 0.0;
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(s.aMinus);
    for (Eigen::Index k = 0; k < 4; ++k) {
      const double re = eig.eigenvalues()(k).real();
      if (re < -1e-8) slowest = slowest == 0.0 ? re : std::max(slowest, re);
    }
    REQUIRE(slowest < 0.0);
    CHECK(max_abs(mat_exp((50.0 / std::abs(slowest)) * s.aMinus) - s.p0) <= 1e-6);
  }
}

TEST_CASE("spectral_split: distinct imaginary-axis eigenvectors are orthogonal") {
  Random rng(22);
  const auto model = oqf::test::persistent_model(rng, 4, 2);
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(model.a);
  std::vector<ComplexVector> axis;
  std::vector<Complex> values;
  for (Eigen::Index k = 0; k < 4; ++k)
    if (std::abs(eig.eigenvalues()(k).real()) < 1e-9) {
      axis.push_back(eig.eigenvectors().col(k).normalized());
      values.push_back(eig.eigenvalues()(k));
    }
  REQUIRE(axis.size() == 2);
  REQUIRE(std::abs(values[0] - values[1]) > 1e-6);
  CHECK(std::abs(axis[0].dot(axis[1])) <= 1e-8);
}

TEST_CASE("spectral_split rejects non-dissipative drift and flags ambiguity") {
  CHECK_THROWS_AS(spectral_split(diag({0.5, -1.0})), PhysicsError);
  const SpectralSplit s = spectral_split(diag({-1.5e-3, -1.0}), 1e-3);
  CHECK(s.ambiguous);
  CHECK(s.imaginaryEigenvalues.empty());
}
