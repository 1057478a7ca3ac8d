#include "oqf/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace oqf {

namespace {

double min_eig(const ComplexMatrix& h) {
  return h.rows() == 0 ? 0.0 : hermitian_eigenvalues(h).minCoeff();
}

// Spectrum of a Hermitian R, or a message if R is not an admissible correlation matrix.
std::optional<std::string> correlation_defect(const ComplexMatrix& r, double tol) {
  if (!r.allFinite()) return "non-finite entries";
  if (!is_hermitian(r, 1e-12)) {
    std::ostringstream os;
    os << "not Hermitian (|R - R^dagger| = " << max_abs(r - r.adjoint()) << ")";
    return os.str();
  }
  if (r.rows() == 0) return std::nullopt;
  const Eigen::VectorXd ev = hermitian_eigenvalues(r);
  if (ev.minCoeff() < -tol || ev.maxCoeff() > 1.0 + tol) {
    std::ostringstream os;
    os << "spectrum [" << ev.minCoeff() << ", " << ev.maxCoeff() << "] outside [0, 1]";
    return os.str();
  }
  return std::nullopt;
}

GaussianState physical_state(ComplexMatrix r, double tol, std::string_view context) {
  r = hermitian_part(r);
  if (auto defect = correlation_defect(r, tol))
    throw PhysicsError(std::string(context) + ": correlation matrix " + *defect);
  return GaussianState(std::move(r), tol);
}

}  // namespace

LiouvillianParams::LiouvillianParams(ComplexMatrix a, ComplexMatrix m, double tol)
    : a_(std::move(a)), m_(std::move(m)) {
  require_square(a_, "LiouvillianParams");
  require_same_size(a_, m_, "LiouvillianParams");
  require_finite(a_, "LiouvillianParams");
  require_finite(m_, "LiouvillianParams");
  gksl_ = is_hermitian(m_, 1e-12) && min_eig(m_) >= -tol &&
          min_eig(-a_ - a_.adjoint() - m_) >= -tol;
}

GaussianState::GaussianState(ComplexMatrix r, double tol) : r_(std::move(r)) {
  require_square(r_, "GaussianState");
  if (auto defect = correlation_defect(r_, tol))
    throw InvalidInput("GaussianState: correlation matrix " + *defect);
}

GaussianState GaussianState::vacuum(Eigen::Index n) {
  return GaussianState(ComplexMatrix::Zero(n, n));
}

ComplexMatrix PhysicalModel::loss_matrix() const {
  ComplexMatrix d = ComplexMatrix::Zero(h.rows(), h.rows());
  for (const auto& l : lossVectors) d += l * l.adjoint();
  return d;
}

ComplexMatrix PhysicalModel::gain_matrix() const {
  ComplexMatrix e = ComplexMatrix::Zero(h.rows(), h.rows());
  for (const auto& l : gainVectors) e += l * l.adjoint();
  return e;
}

LiouvillianParams params_from_model(const PhysicalModel& model) {
  require_square(model.h, "params_from_model");
  require_finite(model.h, "params_from_model");
  if (!is_hermitian(model.h, 1e-12)) throw InvalidInput("params_from_model: H is not Hermitian");
  const auto n = model.h.rows();
  auto check = [n](const std::vector<ComplexVector>& vs, const char* kind) {
    for (const auto& v : vs) {
      if (v.size() != n) {
        std::ostringstream os;
        os << "params_from_model: " << kind << " vector has length " << v.size()
           << ", expected " << n;
        throw InvalidInput(os.str());
      }
      if (!v.allFinite()) throw InvalidInput(std::string("params_from_model: non-finite ") + kind);
    }
  };
  check(model.lossVectors, "loss");
  check(model.gainVectors, "gain");

  const ComplexMatrix d = model.loss_matrix();
  const ComplexMatrix e = model.gain_matrix();
  const Complex i(0.0, 1.0);
  return {-i * model.h - d - e, 2.0 * e};
}

GaussianState evolve_state(const LiouvillianParams& p, const GaussianState& s, double t,
                           double tol) {
  require_same_size(p.a(), s.r(), "evolve_state");
  if (!(t >= 0.0)) throw InvalidInput("evolve_state: t must be >= 0");
  const auto [prop, integral] = propagator_and_integral(p.a(), p.m(), t);
  return physical_state(prop * s.r() * prop.adjoint() + integral, tol, "evolve_state");
}

GaussianState steady_state(const LiouvillianParams& p, std::optional<double> reTol, double tol) {
  const SpectralSplit split = spectral_split(p.a(), reTol);
  if (!split.imaginaryEigenvalues.empty()) {
    std::ostringstream os;
    os << "no unique steady state; use asymptotic_decomposition (imaginary-axis eigenvalues:";
    for (const auto& l : split.imaginaryEigenvalues) os << ' ' << l;
    os << ')';
    throw PhysicsError(os.str());
  }
  return physical_state(lyapunov_solve(p.a(), p.m()), tol, "steady_state");
}

ComplexMatrix AsymptoticDecomposition::correlation_at(double t) const {
  const ComplexMatrix rot = mat_exp(t * a0Flow.a);
  return mInf + rot * projectedState.r() * rot.adjoint();
}

AsymptoticDecomposition asymptotic_decomposition(const LiouvillianParams& p,
                                                 const GaussianState& s,
                                                 std::optional<double> reTol) {
  require_same_size(p.a(), s.r(), "asymptotic_decomposition");
  if (!p.gksl()) throw PhysicsError("asymptotic_decomposition: parameters violate O <= M <= -A - A^dagger");

  SpectralSplit split = spectral_split(p.a(), reTol);
  const auto n = p.size();

  // M P₀ = P₀ M = O, so M_∞ lives on V₋ = range(I - P₀); restrict the
  // Lyapunov solve there to avoid the singular imaginary-axis pairs.
  ComplexMatrix m_inf = ComplexMatrix::Zero(n, n);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> proj(ComplexMatrix::Identity(n, n) - split.p0);
  Eigen::Index damped_dim = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (proj.eigenvalues()(i) > 0.5) ++damped_dim;
  if (damped_dim > 0) {
    const ComplexMatrix q = proj.eigenvectors().rightCols(damped_dim);
    const ComplexMatrix t =
        lyapunov_solve(q.adjoint() * p.a() * q, q.adjoint() * p.m() * q);
    m_inf = hermitian_part(q * t * q.adjoint());
  }

  ComplexMatrix projected = hermitian_part(split.p0 * s.r() * split.p0);
  AffineGenerator a0_flow(split.a0, ComplexMatrix::Zero(n, n));
  return {std::move(a0_flow), std::move(m_inf), GaussianState(std::move(projected)),
          std::move(split)};
}

Complex expectation_quadratic(const GaussianState& s, const ComplexMatrix& t) {
  require_same_size(s.r(), t, "expectation_quadratic");
  return (t * s.r()).trace();
}

double entropy(const GaussianState& s) {
  if (s.size() == 0) return 0.0;
  auto h = [](double x) { return x <= 0.0 ? 0.0 : -x * std::log(x); };
  double total = 0.0;
  for (double r : hermitian_eigenvalues(s.r())) {
    r = std::clamp(r, 0.0, 1.0);
    total += h(r) + h(1.0 - r);
  }
  return total;
}

}  // namespace oqf
