#include "oqf/affine.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace oqf {

AffineElement::AffineElement(ComplexMatrix u, ComplexMatrix m, double maxCondition)
    : u_(std::move(u)), m_(std::move(m)) {
  require_square(u_, "AffineElement");
  require_same_size(u_, m_, "AffineElement");
  require_finite(u_, "AffineElement");
  require_finite(m_, "AffineElement");
  if (u_.rows() == 0) return;
  Eigen::JacobiSVD<ComplexMatrix> svd(u_);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0.0) || sv(0) / smallest > maxCondition) {
    std::ostringstream os;
    os << "AffineElement: linear part is not safely invertible (condition number "
       << (smallest > 0.0 ? sv(0) / smallest : INFINITY) << " > " << maxCondition << ")";
    throw InvalidInput(os.str());
  }
}

AffineElement AffineElement::identity(Eigen::Index n) {
  return {ComplexMatrix::Identity(n, n), ComplexMatrix::Zero(n, n)};
}

AffineElement AffineElement::inverse() const {
  const ComplexMatrix u_inv = u_.partialPivLu().inverse();
  return {u_inv, -u_inv * m_ * u_inv.adjoint()};
}

AffineGenerator::AffineGenerator(ComplexMatrix a_, ComplexMatrix m_)
    : a(std::move(a_)), m(std::move(m_)) {
  require_square(a, "AffineGenerator");
  require_same_size(a, m, "AffineGenerator");
  require_finite(a, "AffineGenerator");
  require_finite(m, "AffineGenerator");
}

ComplexMatrix act(const AffineElement& g, const ComplexMatrix& x) {
  require_same_size(g.u(), x, "act");
  return g.u() * x * g.u().adjoint() + g.m();
}

AffineElement compose(const AffineElement& g, const AffineElement& h) {
  require_same_size(g.u(), h.u(), "compose");
  // The product of two admissible linear parts is re-checked by the constructor.
  return {g.u() * h.u(), g.u() * h.m() * g.u().adjoint() + g.m()};
}

AffineGenerator bracket(const AffineGenerator& p, const AffineGenerator& q) {
  require_same_size(p.a, q.a, "bracket");
  return {commutator(p.a, q.a),
          p.a * q.m + q.m * p.a.adjoint() - q.a * p.m - p.m * q.a.adjoint()};
}

AffineElement flow(const AffineGenerator& p, double t) {
  if (!(t >= 0.0)) throw InvalidInput("flow: t must be >= 0");
  auto [prop, integral] = propagator_and_integral(p.a, p.m, t);
  return {std::move(prop), std::move(integral)};
}

IdentityResidual conjugation_identity_check(const ComplexMatrix& a, const ComplexMatrix& m,
                                            double t, double tol) {
  const ComplexMatrix tm = lyapunov_solve(a, m);
  const auto n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);

  const AffineElement lhs = flow(AffineGenerator(a, m), t);
  const AffineElement rhs =
      compose(compose(AffineElement(id, tm), flow(AffineGenerator(a, zero), t)),
              AffineElement(id, -tm));

  IdentityResidual out;
  out.residual = std::max(max_abs(lhs.u() - rhs.u()), max_abs(lhs.m() - rhs.m()));
  out.holds = out.residual <= tol;
  return out;
}

}  // namespace oqf
