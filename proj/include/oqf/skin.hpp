#pragma once

#include <optional>
#include <vector>

#include "oqf/gaussian.hpp"

namespace oqf::skin {

/// Open Hatano-Nelson chain H = ωI + λ𝔽, D − E = γ(aI + 𝔾), with the
/// steady-state amplitude x of the localized target X = x V(κ)⁻².
struct HatanoNelsonParams {
  int n = 0;
  double omega = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
  double aParam = 0.0;
  std::optional<double> x;  // defaults to κ^{2n−2}/4

  /// κ = √((γ−λ)/(γ+λ)).
  double kappa() const;
  double x_value() const;
  /// Throws InvalidInput naming the first violated condition among
  /// n ≥ 1, ω > 0, λ > 0, γ > λ, a > 2, 0 < x < κ^{2n−2}/2.
  void validate() const;
};

struct HatanoNelsonMatrices {
  ComplexMatrix f;       // 𝔽_jk = δ_{j,k+1} + δ_{j+1,k}
  ComplexMatrix g;       // 𝔾_jk = iδ_{j,k+1} − iδ_{j+1,k}
  ComplexMatrix hNH;     // (ω − iaγ)I + 𝕂
  ComplexMatrix vKappa;  // diag(1, κ, …, κ^{n−1})
  double similarityResidual = 0.0;
};

/// Throws NumericalError if V H_nH V⁻¹ differs from
/// (ω − iaγ)I − i√(γ²−λ²) 𝔾 by more than 1e-10.
HatanoNelsonMatrices build_matrices(const HatanoNelsonParams& p);

struct SkinBath {
  ComplexMatrix e;
  ComplexMatrix m;  // 2E
  ComplexMatrix a;  // −iH_nH − M

  LiouvillianParams params() const { return {a, m}; }
};

/// The gain matrix E whose steady state is X = x V(κ)⁻², obtained from
/// (2X − I) E + E (2X − I) = −x V⁻¹[2aγI + 2√(γ²−λ²)𝔾]V⁻¹. Throws
/// PhysicsError if any of E ⩾ O, M ⩾ O, −A − A† − M ⩾ O (1e-9) or the
/// steady-state residual A X + X A† + M = O (1e-9) fails.
SkinBath build_bath(const HatanoNelsonParams& p);

/// x V(κ)⁻², the target steady state.
ComplexMatrix localized_target(const HatanoNelsonParams& p);

/// Site occupations ⟨c_j† c_j⟩ of the steady state of build_bath(p),
/// obtained from an independent Lyapunov steady-state solve.
std::vector<double> steady_profile(const HatanoNelsonParams& p);

/// Consecutive differences log n_{j+1} − log n_j.
std::vector<double> log_slopes(const std::vector<double>& profile);

/// Bath E = δD = iδ/(2(1−δ)) (H_nH − H_nH†), 0 < δ < 1.
SkinBath featureless_bath(const HatanoNelsonParams& p, double delta);

/// Steady state of featureless_bath; equals δ/(1+δ) I. Throws PhysicsError
/// if the solve disagrees with that by more than 1e-9.
ComplexMatrix featureless_choice(const HatanoNelsonParams& p, double delta);

}  // namespace oqf::skin
