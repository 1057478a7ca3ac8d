#include <doctest.h>

#include "oqf/fock_oracle.hpp"
#include "oqf/gaussian.hpp"
#include "support.hpp"

using namespace oqf;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix scalar(Complex x) { return ComplexMatrix::Constant(1, 1, x); }

double slowest_rate(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(a, false);
  return eig.eigenvalues().real().maxCoeff();
}

}  // namespace

TEST_CASE("params_from_model examples") {
  PhysicalModel empty{ComplexMatrix::Zero(2, 2), {}, {}};
  const LiouvillianParams p0 = params_from_model(empty);
  CHECK(max_abs(p0.a()) == 0.0);
  CHECK(max_abs(p0.m()) == 0.0);
  CHECK(p0.gksl());

  const double omega = 1.7, gamma = 0.4;
  PhysicalModel loss{scalar(omega), {ComplexVector::Constant(1, std::sqrt(gamma))}, {}};
  const LiouvillianParams p1 = params_from_model(loss);
  CHECK(std::abs(p1.a()(0, 0) - Complex(-gamma, -omega)) < 1e-15);
  CHECK(std::abs(p1.m()(0, 0)) == 0.0);
  CHECK(p1.gksl());

  PhysicalModel gain{scalar(omega), {}, {ComplexVector::Constant(1, std::sqrt(gamma))}};
  const LiouvillianParams p2 = params_from_model(gain);
  CHECK(std::abs(p2.a()(0, 0) - Complex(-gamma, -omega)) < 1e-15);
  CHECK(std::abs(p2.m()(0, 0) - 2.0 * gamma) < 1e-15);
  // −A−A†−M = 2D is positive semidefinite whatever the gain strength.
  CHECK(p2.gksl());

  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(params_from_model({h, {}, {}}), InvalidInput);
}

TEST_CASE("LiouvillianParams flags GKSL violations") {
  CHECK_FALSE(LiouvillianParams(scalar(-1.0), scalar(-0.5)).gksl());
  CHECK_FALSE(LiouvillianParams(scalar(-1.0), scalar(3.0)).gksl());
  CHECK(LiouvillianParams(scalar(-1.0), scalar(2.0)).gksl());
  CHECK_THROWS_AS(LiouvillianParams(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)),
                  InvalidInput);
}

TEST_CASE("GaussianState validation") {
  CHECK_NOTHROW(GaussianState(scalar(0.0)));
  CHECK_NOTHROW(GaussianState(scalar(1.0)));
  CHECK_THROWS_AS(GaussianState(scalar(1.1)), InvalidInput);
  CHECK_THROWS_AS(GaussianState(scalar(-0.1)), InvalidInput);
  ComplexMatrix r = 0.3 * ComplexMatrix::Identity(2, 2);
  r(0, 1) = 0.1;
  CHECK_THROWS_AS(GaussianState{r}, InvalidInput);
}

TEST_CASE("evolve_state examples") {
  Random rng(51);
  const LiouvillianParams p = rng.gksl_params(3);
  const GaussianState s = rng.correlation_state(3);
  CHECK(max_abs(evolve_state(p, s, 0.0).r() - s.r()) == 0.0);

  const double gamma = 0.6, nbar = 0.35, r0 = 0.9, t = 1.7;
  const LiouvillianParams relax(scalar(-gamma), scalar(2.0 * gamma * nbar));
  const double expected = std::exp(-2 * gamma * t) * r0 + nbar * (1 - std::exp(-2 * gamma * t));
  CHECK(std::abs(evolve_state(relax, GaussianState(scalar(r0)), t).r()(0, 0) - expected) <
        1e-15);
}

TEST_CASE("evolve_state matches the dense oracle") {
  Random rng(52);
  const fock::FockSpace space(3);
  for (int trial = 0; trial < 3; ++trial) {
    const LiouvillianParams p = rng.gksl_params(3);
    const GaussianState s = rng.correlation_state(3);
    const fock::FockOperator rho = fock::gaussian_density(space, s);
    const ComplexMatrix dense =
        fock::read_correlations(space, fock::dense_evolve(space, p, rho, 0.7));
    CHECK(max_abs(dense - evolve_state(p, s, 0.7).r()) <= 1e-9);
  }
}

TEST_CASE("evolve_state rejects drift that leaves the physical states") {
  const LiouvillianParams pump(scalar(1.0), scalar(0.0));
  CHECK_THROWS_AS(evolve_state(pump, GaussianState(scalar(0.5)), 1.0), PhysicsError);
  CHECK_THROWS_AS(evolve_state(pump, GaussianState(scalar(0.5)), -1.0), InvalidInput);
}

TEST_CASE("evolve_state flow consistency") {
  Random rng(53);
  for (Eigen::Index n = 1; n <= 6; ++n) {
    const LiouvillianParams p = rng.gksl_params(n);
    const GaussianState s = rng.correlation_state(n);
    const ComplexMatrix once = evolve_state(p, s, 1.1).r();
    const ComplexMatrix twice = evolve_state(p, evolve_state(p, s, 0.4), 0.7).r();
    CHECK(max_abs(once - twice) <= 1e-10);
  }
}

TEST_CASE("evolve_state keeps the spectrum in [0, 1]") {
  Random rng(54);
  for (int trial = 0; trial < 5; ++trial) {
    const LiouvillianParams p = rng.gksl_params(4);
    const GaussianState s = rng.correlation_state(4, 0.0, 1.0);
    for (double t = 0.1; t <= 10.0; t += 0.7) {
      const Eigen::VectorXd eigs = hermitian_eigenvalues(evolve_state(p, s, t).r());
      CHECK(eigs.minCoeff() >= -1e-10);
      CHECK(eigs.maxCoeff() <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("steady_state examples") {
  const double gamma = 0.8, nbar = 0.3;
  const LiouvillianParams relax(scalar(-gamma), scalar(2.0 * gamma * nbar));
  CHECK(std::abs(steady_state(relax).r()(0, 0) - nbar) < 1e-15);

  Random rng(55);
  const LiouvillianParams quiet(rng.stable(3), ComplexMatrix::Zero(3, 3));
  CHECK(max_abs(steady_state(quiet).r()) == 0.0);

  const LiouvillianParams p = rng.gksl_params(3);
  const GaussianState steady = steady_state(p);
  CHECK(max_abs(p.a() * steady.r() + steady.r() * p.a().adjoint() + p.m()) < 1e-12);
  CHECK(max_abs(evolve_state(p, steady, 5.0).r() - steady.r()) <= 1e-9);
}

TEST_CASE("steady_state refuses persistent oscillations") {
  Random rng(56);
  const auto model = oqf::test::persistent_model(rng, 3, 1);
  try {
    steady_state({model.a, model.m});
    FAIL("expected PhysicsError");
  } catch (const PhysicsError& e) {
    const std::string what = e.what();
    CHECK(what.find("no unique steady state") != std::string::npos);
    CHECK(what.find("asymptotic_decomposition") != std::string::npos);
  }
}

TEST_CASE("steady state convergence is exponential") {
  Random rng(57);
  const LiouvillianParams p = rng.gksl_params(3);
  const GaussianState s = rng.correlation_state(3);
  const ComplexMatrix target = steady_state(p).r();
  const double t = 3.0 / std::abs(slowest_rate(p.a()));
  const double early = max_abs(evolve_state(p, s, t).r() - target);
  const double late = max_abs(evolve_state(p, s, 2 * t).r() - target);
  CHECK(late * 10.0 <= early);
}

TEST_CASE("steady-state entropy is stationary") {
  Random rng(58);
  const LiouvillianParams p = rng.gksl_params(4);
  const GaussianState steady = steady_state(p);
  CHECK(std::abs(entropy(evolve_state(p, steady, 3.0)) - entropy(steady)) <= 1e-9);
}

TEST_CASE("asymptotic_decomposition examples") {
  Random rng(59);
  const LiouvillianParams damped = rng.gksl_params(3);
  const GaussianState s = rng.correlation_state(3);
  const AsymptoticDecomposition d = asymptotic_decomposition(damped, s);
  CHECK(max_abs(d.a0Flow.a) == 0.0);
  CHECK(max_abs(d.a0Flow.m) == 0.0);
  CHECK(max_abs(d.projectedState.r()) == 0.0);
  CHECK(max_abs(d.mInf - steady_state(damped).r()) < 1e-12);

  const ComplexMatrix h = rng.hermitian(3);
  const LiouvillianParams closed(I * h, ComplexMatrix::Zero(3, 3));
  const AsymptoticDecomposition c = asymptotic_decomposition(closed, s);
  CHECK(max_abs(c.mInf) < 1e-12);
  CHECK(max_abs(c.projectedState.r() - s.r()) < 1e-12);
  CHECK(max_abs(c.a0Flow.a - I * h) < 1e-12);
  CHECK(max_abs(c.correlation_at(2.0) - evolve_state(closed, s, 2.0).r()) < 1e-11);
}

TEST_CASE("asymptotic_decomposition matches the dense oracle with one undamped mode") {
  Random rng(60);
  const auto model = oqf::test::persistent_model(rng, 3, 1);
  const LiouvillianParams p(model.a, model.m);
  REQUIRE(p.gksl());
  const GaussianState s = rng.correlation_state(3);
  const AsymptoticDecomposition d = asymptotic_decomposition(p, s);
  const fock::FockSpace space(3);
  const ComplexMatrix dense = fock::read_correlations(
      space, fock::dense_evolve(space, p, fock::gaussian_density(space, s), 40.0));
  CHECK(max_abs(dense - d.correlation_at(40.0)) <= 1e-7);
}

TEST_CASE("asymptotic_decomposition requires GKSL parameters") {
  const LiouvillianParams bad(scalar(-1.0), scalar(-0.5));
  CHECK_THROWS_AS(asymptotic_decomposition(bad, GaussianState(scalar(0.2))), PhysicsError);
}

TEST_CASE("expectation_quadratic examples") {
  Random rng(61);
  const GaussianState s = rng.correlation_state(3);
  CHECK(std::abs(expectation_quadratic(s, ComplexMatrix::Identity(3, 3)) - s.r().trace()) <
        1e-15);
  CHECK(std::abs(expectation_quadratic(GaussianState::vacuum(3), rng.complex_matrix(3))) == 0.0);

  const fock::FockSpace space(2);
  const GaussianState s2 = rng.correlation_state(2);
  const ComplexMatrix rho = fock::gaussian_density(space, s2).matrix;
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix t = rng.hermitian(2);
    const Complex dense = (space.quadratic(t) * rho).trace();
    CHECK(std::abs(dense - expectation_quadratic(s2, t)) <= 1e-10);
    CHECK(std::abs(expectation_quadratic(s2, t).imag()) < 1e-15);
  }
  CHECK_THROWS_AS(expectation_quadratic(s2, ComplexMatrix::Identity(3, 3)), InvalidInput);
}

TEST_CASE("entropy examples") {
  CHECK(std::abs(entropy(GaussianState(scalar(0.5))) - std::log(2.0)) < 1e-15);
  CHECK(entropy(GaussianState::vacuum(3)) == 0.0);
  CHECK(entropy(GaussianState(ComplexMatrix::Identity(2, 2))) == 0.0);

  Random rng(62);
  const fock::FockSpace space(2);
  for (int trial = 0; trial < 5; ++trial) {
    const GaussianState s = rng.correlation_state(2);
    const double dense = fock::von_neumann_entropy(fock::gaussian_density(space, s));
    CHECK(std::abs(dense - entropy(s)) <= 1e-9);
  }
}
