#include "oqf/identity_suite.hpp"

#include "oqf/affine.hpp"
#include "oqf/random.hpp"

namespace oqf::verify {

using fock::DenseSuperOperator;
using fock::FockOperator;
using fock::FockSpace;
using fock::SuperKind;
using fock::Vectors;

namespace {

constexpr double kCommutatorTol = 1e-11;
constexpr double kLiouvillianTol = 1e-10;
constexpr double kFactorizationTol = 1e-9;

IdentityCheck make(std::string name, std::string formula, double residual, double tol) {
  return {std::move(name), std::move(formula), residual, tol};
}

double diff(const DenseSuperOperator& x, const DenseSuperOperator& y) { return max_abs(x - y); }

}  // namespace

std::vector<IdentityCheck> superoperator_commutators(const FockSpace& space,
                                                     const ComplexMatrix& c,
                                                     const ComplexMatrix& d) {
  auto L = [&](const ComplexMatrix& x) { return super_basic(space, SuperKind::L, x); };
  auto G = [&](const ComplexMatrix& x) { return super_basic(space, SuperKind::G, x); };
  auto F = [&](const ComplexMatrix& x) { return super_basic(space, SuperKind::F, x); };
  auto B = [&](const ComplexMatrix& x) { return super_basic(space, SuperKind::B, x); };
  const DenseSuperOperator id = space.super_identity();
  const ComplexMatrix cd = c * d;
  const ComplexMatrix dc = d * c;
  const ComplexMatrix br = cd - dc;

  std::vector<IdentityCheck> out;
  out.push_back(make("commutator_FF", "[F(C),F(D)] = F([C,D])",
                     diff(commutator(F(c), F(d)), F(br)), kCommutatorTol));
  out.push_back(make("commutator_BB", "[B(C),B(D)] = -B([C,D])",
                     diff(commutator(B(c), B(d)), Complex(-1.0) * B(br)), kCommutatorTol));
  out.push_back(make("commutator_FL", "[F(C),L(D)] = -L(DC)",
                     diff(commutator(F(c), L(d)), Complex(-1.0) * L(dc)), kCommutatorTol));
  out.push_back(make("commutator_BL", "[B(C),L(D)] = -L(CD)",
                     diff(commutator(B(c), L(d)), Complex(-1.0) * L(cd)), kCommutatorTol));
  out.push_back(make("commutator_FG", "[F(C),G(D)] = G(CD)",
                     diff(commutator(F(c), G(d)), G(cd)), kCommutatorTol));
  out.push_back(make("commutator_BG", "[B(C),G(D)] = G(DC)",
                     diff(commutator(B(c), G(d)), G(dc)), kCommutatorTol));
  out.push_back(make("commutator_FB", "[F(C),B(D)] = 0", max_abs(commutator(F(c), B(d))),
                     kCommutatorTol));
  out.push_back(make("commutator_LL", "[L(C),L(D)] = 0", max_abs(commutator(L(c), L(d))),
                     kCommutatorTol));
  out.push_back(make("commutator_GG", "[G(C),G(D)] = 0", max_abs(commutator(G(c), G(d))),
                     kCommutatorTol));
  out.push_back(make("commutator_LG", "[L(C),G(D)] = tr(CD) - F(DC) - B(CD)",
                     diff(commutator(L(c), G(d)), cd.trace() * id - F(dc) - B(cd)),
                     kCommutatorTol));
  return out;
}

std::vector<IdentityCheck> auxiliary_commutators(const FockSpace& space, const ComplexMatrix& c,
                                                 const ComplexMatrix& d) {
  auto L = [&](const ComplexMatrix& x) { return super_basic(space, SuperKind::L, x); };
  auto G = [&](const ComplexMatrix& x) { return super_basic(space, SuperKind::G, x); };
  auto F = [&](const ComplexMatrix& x) { return super_basic(space, SuperKind::F, x); };
  auto B = [&](const ComplexMatrix& x) { return super_basic(space, SuperKind::B, x); };
  auto FL = [&](const ComplexMatrix& x) { return F(x) - L(x); };
  auto BL = [&](const ComplexMatrix& x) { return B(x) - L(x); };
  auto S = [&](const ComplexMatrix& x) { return F(x) + B(x) - L(x) + G(x); };
  const DenseSuperOperator id = space.super_identity();
  const ComplexMatrix cd = c * d;
  const ComplexMatrix dc = d * c;
  const ComplexMatrix br = cd - dc;

  std::vector<IdentityCheck> out;
  out.push_back(make("auxiliary_FL_FL", "[(F-L)(C),(F-L)(D)] = (F-L)([C,D])",
                     diff(commutator(FL(c), FL(d)), FL(br)), kCommutatorTol));
  out.push_back(make("auxiliary_BL_BL", "[(B-L)(C),(B-L)(D)] = -(B-L)([C,D])",
                     diff(commutator(BL(c), BL(d)), Complex(-1.0) * BL(br)), kCommutatorTol));
  out.push_back(make("auxiliary_FL_BL", "[(F-L)(C),(B-L)(D)] = 0",
                     max_abs(commutator(FL(c), BL(d))), kCommutatorTol));
  out.push_back(make("auxiliary_FL_S", "[(F-L)(C),S(D)] = S(CD) - tr(CD)",
                     diff(commutator(FL(c), S(d)), S(cd) - cd.trace() * id), kCommutatorTol));
  out.push_back(make("auxiliary_BL_S", "[(B-L)(C),S(D)] = S(DC) - tr(DC)",
                     diff(commutator(BL(c), S(d)), S(dc) - dc.trace() * id), kCommutatorTol));
  out.push_back(make("auxiliary_S_S", "[S(C),S(D)] = 0", max_abs(commutator(S(c), S(d))),
                     kCommutatorTol));
  return out;
}

IdentityCheck liouvillian_commutator(const FockSpace& space, const ComplexMatrix& a,
                                     const ComplexMatrix& m, const ComplexMatrix& b,
                                     const ComplexMatrix& n) {
  const DenseSuperOperator lhs =
      commutator(super_liouvillian(space, a, m), super_liouvillian(space, b, n));
  const DenseSuperOperator rhs = super_liouvillian(
      space, oqf::commutator(a, b), a * n + n * a.adjoint() - b * m - m * b.adjoint());
  return make("liouvillian_commutator", "[L(A,M),L(B,N)] = L([A,B], AN+NA^+ - BM-MB^+)",
              diff(lhs, rhs), kLiouvillianTol);
}

IdentityCheck factorization(const FockSpace& space, const LiouvillianParams& p, double t) {
  const auto n = p.size();
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  const ComplexMatrix lhs = mat_exp(t * super_liouvillian(space, p).matrix);
  const ComplexMatrix noise = van_loan_integral(p.a(), p.m(), t);
  const ComplexMatrix rhs = mat_exp(super_liouvillian(space, zero, noise).matrix) *
                            mat_exp(t * super_liouvillian(space, p.a(), zero).matrix);
  return make("factorization", "e^{tL(A,M)} = e^{L(O, int_0^t e^{sA}Me^{sA^+}ds)} e^{tL(A,O)}",
              oqf::max_abs(lhs - rhs), kFactorizationTol);
}

std::vector<IdentityCheck> run_identity_suite(int modes, std::uint64_t seed,
                                              std::optional<double> toleranceOverride) {
  if (modes < 1 || modes > fock::kMaxEvolveModes)
    throw InvalidInput("verify: n must lie in [1, 5]");
  const FockSpace space(modes);
  Random rng(seed);
  const Eigen::Index n = modes;
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  const DenseSuperOperator id = space.super_identity();
  std::vector<IdentityCheck> out;

  // Canonical anticommutation relations.
  {
    double worst = 0.0;
    const ComplexMatrix eye = space.identity();
    for (int j = 0; j < modes; ++j)
      for (int k = 0; k < modes; ++k) {
        const ComplexMatrix& cj = space.c(j);
        const ComplexMatrix& ck = space.c(k);
        const ComplexMatrix& ckd = space.c_dag(k);
        const ComplexMatrix& cjd = space.c_dag(j);
        worst = std::max(worst, oqf::max_abs(cj * ck + ck * cj));
        worst = std::max(worst, oqf::max_abs(cj * ckd + ckd * cj - (j == k ? eye : 0.0 * eye)));
        worst = std::max(worst, oqf::max_abs(cjd * ckd + ckd * cjd));
      }
    out.push_back(make("car", "{c_j,c_k} = 0, {c_j,c_k^+} = delta_jk, {c_j^+,c_k^+} = 0", worst,
                       1e-14));
  }

  {
    const ComplexMatrix c = rng.complex_matrix(n);
    const ComplexMatrix d = rng.complex_matrix(n);
    for (auto& check : superoperator_commutators(space, c, d)) out.push_back(std::move(check));
    for (auto& check : auxiliary_commutators(space, c, d)) out.push_back(std::move(check));
  }

  {
    const ComplexMatrix a = rng.complex_matrix(n);
    const ComplexMatrix m = rng.complex_matrix(n);
    const ComplexMatrix b = rng.complex_matrix(n);
    const ComplexMatrix nn = rng.complex_matrix(n);
    out.push_back(liouvillian_commutator(space, a, m, b, nn));

    // Tr L(A,M)ρ = 0 for every ρ: the vectorized trace functional annihilates L.
    const ComplexVector trace_row = space.vec(space.identity());
    const ComplexMatrix lam = super_liouvillian(space, a, m).matrix;
    out.push_back(make("trace_preservation", "Tr L(A,M) rho = 0",
                       oqf::max_abs(trace_row.transpose() * lam), 1e-12));
    out.push_back(make("vacuum_stationary", "L(A,O) Omega = 0",
                       oqf::max_abs(super_liouvillian(space, a, zero).matrix *
                                    space.vec(space.vacuum())),
                       1e-12));
  }

  {
    const ComplexMatrix a = rng.complex_matrix(n);
    const ComplexMatrix m = rng.complex_matrix(n);
    const double t = 0.7;
    const ComplexMatrix prop = mat_exp(t * a);
    const ComplexMatrix evo = mat_exp(t * super_liouvillian(space, a, zero).matrix);
    const ComplexMatrix lhs = evo * super_liouvillian(space, zero, m).matrix;
    const ComplexMatrix rhs =
        super_liouvillian(space, zero, prop * m * prop.adjoint()).matrix * evo;
    out.push_back(make("drift_intertwines_noise",
                       "e^{tL(A,O)} L(O,M) = L(O, e^{tA}Me^{tA^+}) e^{tL(A,O)}",
                       oqf::max_abs(lhs - rhs), kLiouvillianTol));

    const ComplexMatrix tm = 0.5 * rng.complex_matrix(n);
    const ComplexMatrix lt = super_liouvillian(space, zero, tm).matrix;
    const ComplexMatrix conj_lhs =
        mat_exp(lt) * super_liouvillian(space, a, m).matrix * mat_exp(-lt);
    const ComplexMatrix conj_rhs =
        super_liouvillian(space, a, m - a * tm - tm * a.adjoint()).matrix;
    out.push_back(make("noise_conjugation",
                       "e^{L(O,T)} L(A,M) e^{-L(O,T)} = L(A, M - AT - TA^+)",
                       oqf::max_abs(conj_lhs - conj_rhs), kLiouvillianTol));
  }

  {
    const LiouvillianParams p = rng.gksl_params(n);
    for (double t : {0.3, 1.0}) {
      auto check = factorization(space, p, t);
      check.name += t == 0.3 ? "_t0.3" : "_t1";
      out.push_back(std::move(check));
    }
  }

  {
    const ComplexMatrix m = rng.hermitian(n);
    const ComplexMatrix t_mat = rng.hermitian(n);
    const double t = 0.5;
    const ComplexMatrix half = mat_exp(0.5 * t * m);
    const ComplexMatrix evo = mat_exp(t * super_liouvillian(space, -0.5 * m, m).matrix);
    const ComplexMatrix lhs = evo * super_basic(space, SuperKind::G, t_mat).matrix;
    const ComplexMatrix rhs = super_basic(space, SuperKind::G, half * t_mat * half).matrix * evo;
    out.push_back(make("gain_intertwining",
                       "e^{tL(-M/2,M)} G(T) = G(e^{tM/2}Te^{tM/2}) e^{tL(-M/2,M)}",
                       oqf::max_abs(lhs - rhs), kLiouvillianTol));
  }

  {
    const GaussianState s = rng.correlation_state(n);
    const ComplexMatrix t_mat = rng.hermitian(n);
    const FockOperator exact(
        modes, space.unvec(mat_exp(super_liouvillian(space, zero, s.r()).matrix) *
                           space.vec(space.vacuum())));
    const FockOperator formula = fock::gaussian_density(space, s);
    out.push_back(make("gaussian_density", "e^{L(O,R)} Omega = det(I-R) e^{(c, log(R(I-R)^-1) c)}",
                       oqf::max_abs(exact.matrix - formula.matrix), 1e-10));
    const Complex lhs = (space.quadratic(t_mat) * exact.matrix).trace();
    out.push_back(make("gaussian_expectation", "Tr[(c,Tc) e^{L(O,R)} Omega] = tr(TR)",
                       std::abs(lhs - expectation_quadratic(s, t_mat)), 1e-10));
    out.push_back(make("gaussian_entropy",
                       "-Tr[rho log rho] = -tr(R log R) - tr((I-R) log(I-R))",
                       std::abs(fock::von_neumann_entropy(exact) - entropy(s)), 1e-9));

    const LiouvillianParams p = rng.gksl_params(n);
    const double t = 0.8;
    const FockOperator dense = fock::dense_evolve(space, p, exact, t);
    const FockOperator fast = fock::gaussian_density(space, evolve_state(p, s, t));
    out.push_back(make("gaussian_evolution",
                       "e^{tL(A,M)} e^{L(O,R)} Omega = e^{L(O,R(t))} Omega, R(t) = "
                       "e^{tA}Re^{tA^+} + int_0^t e^{sA}Me^{sA^+}ds",
                       oqf::max_abs(dense.matrix - fast.matrix), 1e-10));
  }

  {
    const ComplexVector xi = rng.complex_vector(n);
    const ComplexVector eta = rng.complex_vector(n);
    const DenseSuperOperator step = super_liouvillian(space, zero, xi * eta.adjoint());
    out.push_back(make("nilpotency", "L(O, xi eta^+)^2 = 0", max_abs(step * step), 1e-12));
  }

  {
    const int p = std::min(modes, 2);
    Vectors xis, etas;
    for (int k = 0; k < p; ++k) xis.push_back(rng.complex_vector(n));
    for (int k = 0; k < p; ++k) etas.push_back(rng.complex_vector(n));
    const ComplexMatrix phi = fock::phi_basis(space, xis, etas);

    if (p >= 2) {
      Vectors swapped = xis;
      std::swap(swapped[0], swapped[1]);
      out.push_back(make("antisymmetry", "Phi(xi_2,xi_1,..;eta) = -Phi(xi_1,xi_2,..;eta)",
                         oqf::max_abs(fock::phi_basis(space, swapped, etas) + phi), 1e-12));
    }

    auto pi_fn = [&space](const Vectors& x, const Vectors& e) {
      return fock::pi_basis(space, x, e);
    };
    auto phi_fn = [&space](const Vectors& x, const Vectors& e) {
      return fock::phi_basis(space, x, e);
    };
    out.push_back(make("phi_from_pi", "Phi = sum_{sigma,tau,p} (-1)^p ... Pi",
                       oqf::max_abs(fock::phi_from_pi(space, xis, etas, pi_fn) - phi), 1e-11));
    out.push_back(make("pi_from_phi", "Pi = sum_{sigma,tau,p} ... Phi",
                       oqf::max_abs(fock::pi_from_phi(space, xis, etas, phi_fn) -
                                    fock::pi_basis(space, xis, etas)),
                       1e-11));

    const ComplexMatrix a = rng.complex_matrix(n);
    ComplexMatrix expected = ComplexMatrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < p; ++i) {
      Vectors moved = xis;
      moved[i] = a * moved[i];
      expected += fock::phi_basis(space, moved, etas);
    }
    for (int j = 0; j < p; ++j) {
      Vectors moved = etas;
      moved[j] = a * moved[j];
      expected += fock::phi_basis(space, xis, moved);
    }
    const ComplexMatrix acted =
        space.unvec(super_liouvillian(space, a, zero).matrix * space.vec(phi));
    out.push_back(make("generator_action",
                       "L(A,O) Phi = sum_i Phi(..A xi_i..;eta) + sum_j Phi(xi;..A eta_j..)",
                       oqf::max_abs(acted - expected), 1e-10));
    out.push_back(make("phi_evolution", "e^{tL(A,O)} Phi(xi;eta) = Phi(e^{tA}xi; e^{tA}eta)",
                       fock::phi_evolution_check(space, a, xis, etas, 0.6), 1e-10));
  }

  {
    const Eigen::Index size = 2 * n;
    const Eigen::MatrixXd a = rng.real_matrix(size, size);
    const Eigen::MatrixXd b = rng.real_matrix(size, size);
    Eigen::MatrixXd nn = rng.real_matrix(size, size);
    Eigen::MatrixXd r = rng.real_matrix(size, size);
    nn = (nn - nn.transpose()).eval();
    r = (r - r.transpose()).eval();
    out.push_back(make("majorana_commutator",
                       "[L(A,N),L(B,R)] = L([A,B], AR + RA^t - BN - NB^t)",
                       fock::majorana_liouvillian_check(space, a, nn, b, r), kLiouvillianTol));
  }

  {
    const ComplexMatrix a = rng.stable(n);
    const ComplexMatrix m = rng.positive(n);
    const AffineGenerator gen(a, m);
    const AffineElement lhs = compose(flow(gen, 0.3), flow(gen, 0.7));
    const AffineElement rhs = flow(gen, 1.0);
    out.push_back(make("affine_semigroup", "p_t(A,M) o p_s(A,M) = p_{t+s}(A,M)",
                       std::max(oqf::max_abs(lhs.u() - rhs.u()), oqf::max_abs(lhs.m() - rhs.m())),
                       1e-10));
    out.push_back(make("affine_conjugation",
                       "e^{t((A,M))} = e^{((O,T))} o e^{t((A,O))} o e^{-((O,T))}, AT+TA^+ = -M",
                       conjugation_identity_check(a, m, 0.9).residual, 1e-10));
  }

  if (toleranceOverride)
    for (auto& check : out) check.tolerance = *toleranceOverride;
  return out;
}

}  // namespace oqf::verify
