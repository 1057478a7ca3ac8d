#pragma once

#include "oqf/linalg.hpp"

namespace oqf {

/// Element (U, M) of GL(n;C) ⋉ M(n;C), acting as X ↦ U X U† + M.
class AffineElement {
 public:
  /// Rejects U with condition number above `maxCondition`.
  AffineElement(ComplexMatrix u, ComplexMatrix m, double maxCondition = 1e12);

  static AffineElement identity(Eigen::Index n);

  const ComplexMatrix& u() const { return u_; }
  const ComplexMatrix& m() const { return m_; }
  Eigen::Index size() const { return u_.rows(); }

  AffineElement inverse() const;

 private:
  ComplexMatrix u_;
  ComplexMatrix m_;
};

/// Lie-algebra element ((A, M)).
struct AffineGenerator {
  AffineGenerator(ComplexMatrix a, ComplexMatrix m);

  ComplexMatrix a;
  ComplexMatrix m;
};

ComplexMatrix act(const AffineElement& g, const ComplexMatrix& x);

/// (U, M) ∘ (V, N) = (UV, U N U† + M).
AffineElement compose(const AffineElement& g, const AffineElement& h);

/// [((A,M)), ((B,N))] = (([A,B], AN + NA† − BM − MB†)).
AffineGenerator bracket(const AffineGenerator& p, const AffineGenerator& q);

/// One-parameter semigroup p_t(A, M) = (e^{tA}, ∫₀ᵗ e^{sA} M e^{sA†} ds).
AffineElement flow(const AffineGenerator& p, double t);

struct IdentityResidual {
  bool holds = false;
  double residual = 0.0;
};

/// Compares flow((A,M), t) with (I, T) ∘ (e^{tA}, O) ∘ (I, -T) where
/// A T + T A† = -M.
IdentityResidual conjugation_identity_check(const ComplexMatrix& a, const ComplexMatrix& m,
                                            double t, double tol = 1e-10);

}  // namespace oqf
