#pragma once

#include <optional>
#include <vector>

#include "oqf/affine.hpp"
#include "oqf/linalg.hpp"

namespace oqf {

/// The pair (A, M) labelling the Liouvillian
///   L(A, M) = L̂(-A - A† - M) + Ĝ(M) + F̂(A + M) + B̂(A† + M) - tr M.
/// `gksl()` records whether O ⩽ M ⩽ -A - A† (completely positive dynamics).
class LiouvillianParams {
 public:
  LiouvillianParams(ComplexMatrix a, ComplexMatrix m, double tol = 1e-10);

  const ComplexMatrix& a() const { return a_; }
  const ComplexMatrix& m() const { return m_; }
  bool gksl() const { return gksl_; }
  Eigen::Index size() const { return a_.rows(); }

 private:
  ComplexMatrix a_;
  ComplexMatrix m_;
  bool gksl_ = false;
};

/// Gaussian state e^{L(O,R)}Ω stored as its correlation matrix
/// R_jk = Tr[c_k† c_j ρ].
class GaussianState {
 public:
  /// Throws InvalidInput unless R is Hermitian (1e-12) with spectrum in
  /// [-tol, 1 + tol].
  explicit GaussianState(ComplexMatrix r, double tol = 1e-10);

  static GaussianState vacuum(Eigen::Index n);

  const ComplexMatrix& r() const { return r_; }
  Eigen::Index size() const { return r_.rows(); }

 private:
  ComplexMatrix r_;
};

/// H, loss vectors ℓ_m (m ≤ S) and gain vectors ℓ_m (m > S).
struct PhysicalModel {
  ComplexMatrix h;
  std::vector<ComplexVector> lossVectors;
  std::vector<ComplexVector> gainVectors;

  /// D = Σ_loss ℓℓ†.
  ComplexMatrix loss_matrix() const;
  /// E = Σ_gain ℓℓ†.
  ComplexMatrix gain_matrix() const;
};

/// A = -iH - D - E, M = 2E.
LiouvillianParams params_from_model(const PhysicalModel& model);

/// R(t) = e^{tA} R e^{tA†} + ∫₀ᵗ e^{sA} M e^{sA†} ds.
/// Throws PhysicsError if the result leaves [−tol, 1 + tol].
GaussianState evolve_state(const LiouvillianParams& p, const GaussianState& s, double t,
                           double tol = 1e-10);

/// The unique steady state R = M_∞ solving A R + R A† + M = O. Requires every
/// eigenvalue of A to be strictly damped; otherwise throws PhysicsError.
GaussianState steady_state(const LiouvillianParams& p, std::optional<double> reTol = std::nullopt,
                           double tol = 1e-10);

struct AsymptoticDecomposition {
  AffineGenerator a0Flow;        // ((A₀, O)), the persistent rotation
  ComplexMatrix mInf;            // ∫₀^∞ e^{sA} M e^{sA†} ds
  GaussianState projectedState;  // P₀ R P₀
  SpectralSplit split;

  /// Correlation matrix of e^{tL(A₀,O)} e^{L(O,M_∞)} 𝔭ρ(0), i.e.
  /// M_∞ + e^{tA₀} P₀RP₀ e^{tA₀†}.
  ComplexMatrix correlation_at(double t) const;
};

AsymptoticDecomposition asymptotic_decomposition(const LiouvillianParams& p,
                                                 const GaussianState& s,
                                                 std::optional<double> reTol = std::nullopt);

/// ⟨(c, Tc)⟩ = tr(T R).
Complex expectation_quadratic(const GaussianState& s, const ComplexMatrix& t);

/// -tr R log R - tr (I-R) log (I-R), with 0 log 0 = 0.
double entropy(const GaussianState& s);

}  // namespace oqf
