#pragma once

// Brute-force reference implementation on the 2^n-dimensional fermionic Fock
// space. Operators are dense 2^n × 2^n matrices in the occupation basis
// (ν₁ most significant bit, |v⟩ = all zeros at index 0); superoperators are
// dense 4^n × 4^n matrices acting on column-stacked operators, with
// vec(X ρ Y) = (Yᵀ ⊗ X) vec ρ.

#include <functional>
#include <span>
#include <vector>

#include "oqf/gaussian.hpp"
#include "oqf/linalg.hpp"

namespace oqf::fock {

inline constexpr int kMaxModes = 6;
inline constexpr int kMaxEvolveModes = 5;

using RealMatrix = Eigen::MatrixXd;

/// Operator on the Fock space of `modes` fermionic modes.
struct FockOperator {
  FockOperator(int modes, ComplexMatrix matrix);

  int modes;
  ComplexMatrix matrix;
};

/// Linear map on operators, stored densely.
struct DenseSuperOperator {
  DenseSuperOperator(int modes, ComplexMatrix matrix);

  FockOperator apply(const FockOperator& rho) const;

  int modes;
  ComplexMatrix matrix;
};

DenseSuperOperator operator+(const DenseSuperOperator& x, const DenseSuperOperator& y);
DenseSuperOperator operator-(const DenseSuperOperator& x, const DenseSuperOperator& y);
DenseSuperOperator operator*(const DenseSuperOperator& x, const DenseSuperOperator& y);
DenseSuperOperator operator*(Complex s, const DenseSuperOperator& x);
DenseSuperOperator commutator(const DenseSuperOperator& x, const DenseSuperOperator& y);
double max_abs(const DenseSuperOperator& x);

/// c_1, …, c_n via the parity-string construction
/// c_j = Z ⊗ ⋯ ⊗ Z ⊗ σ⁻ ⊗ I ⊗ ⋯ ⊗ I, σ⁻ = [[0,1],[0,0]], Z = diag(1,-1).
std::vector<FockOperator> build_car(int modes);

/// Cached CAR operators plus the conveniences the rest of the oracle needs.
class FockSpace {
 public:
  explicit FockSpace(int modes);

  int modes() const { return modes_; }
  Eigen::Index dim() const { return dim_; }
  const ComplexMatrix& c(int j) const { return c_[j]; }
  const ComplexMatrix& c_dag(int j) const { return c_dag_[j]; }

  /// Ω = |v⟩⟨v|.
  ComplexMatrix vacuum() const;
  ComplexMatrix identity() const;
  /// (c, A c) = Σ A_jk c_j† c_k.
  ComplexMatrix quadratic(const ComplexMatrix& a) const;
  /// (c, ξ) = Σ ξ_j c_j†.
  ComplexMatrix creator(const ComplexVector& xi) const;
  /// (η, c) = Σ conj(η_j) c_j.
  ComplexMatrix annihilator(const ComplexVector& eta) const;
  /// w_{2m-1} = c_m + c_m†, w_{2m} = i(c_m − c_m†).
  std::vector<ComplexMatrix> majoranas() const;

  ComplexVector vec(const ComplexMatrix& op) const;
  ComplexMatrix unvec(const ComplexVector& v) const;

  DenseSuperOperator super_identity() const;
  DenseSuperOperator left(const ComplexMatrix& x) const;
  DenseSuperOperator right(const ComplexMatrix& x) const;
  /// ρ ↦ X ρ Y.
  DenseSuperOperator sandwich(const ComplexMatrix& x, const ComplexMatrix& y) const;

 private:
  int modes_;
  Eigen::Index dim_;
  std::vector<ComplexMatrix> c_;
  std::vector<ComplexMatrix> c_dag_;
};

enum class SuperKind {
  L,  // ρ ↦ Σ A_jk c_k ρ c_j†
  G,  // ρ ↦ Σ A_jk c_j† ρ c_k
  F,  // ρ ↦ (c, Ac) ρ
  B,  // ρ ↦ ρ (c, Ac)
};

DenseSuperOperator super_basic(const FockSpace& space, SuperKind kind, const ComplexMatrix& a);

/// L(A, M) assembled from its L̂, Ĝ, F̂, B̂ parts and -tr M.
DenseSuperOperator super_liouvillian(const FockSpace& space, const ComplexMatrix& a,
                                     const ComplexMatrix& m);
DenseSuperOperator super_liouvillian(const FockSpace& space, const LiouvillianParams& p);

/// e^{tL(A,M)} ρ by dense exponentiation; modes ≤ 5.
FockOperator dense_evolve(const FockSpace& space, const LiouvillianParams& p,
                          const FockOperator& rho, double t);

/// det(I − R) exp((c, log(R(I−R)⁻¹) c)) for spectra inside (0, 1); the
/// eigenbasis product Π_j [(1−r_j)(1−n_j) + r_j n_j] at the endpoints.
FockOperator gaussian_density(const FockSpace& space, const GaussianState& s);

/// The product form alone, for any spectrum in [0, 1].
FockOperator gaussian_density_product(const FockSpace& space, const GaussianState& s);

/// R_jk = Tr[c_k† c_j ρ].
ComplexMatrix read_correlations(const FockSpace& space, const FockOperator& rho);

double trace_distance(const FockOperator& rho, const FockOperator& sigma);
double von_neumann_entropy(const FockOperator& rho);

// ---------------------------------------------------------------------------
// Φ / Π bases of the operator space.

using Vectors = std::vector<ComplexVector>;
using BasisElementFn = std::function<ComplexMatrix(const Vectors& xis, const Vectors& etas)>;

/// Φ(ξ₁…ξ_p; η₁…η_q), built by Φ(ξ₁,…; η₁,…) = L(O, ξ₁η₁†) Φ(ξ₂,…; η₂,…)
/// down to the one-sided base cases.
ComplexMatrix phi_basis(const FockSpace& space, const Vectors& xis, const Vectors& etas);

/// Π(ξ₁…ξ_p; η₁…η_q) = (c,ξ₁)⋯(c,ξ_p) Ω (η_q,c)⋯(η₁,c).
ComplexMatrix pi_basis(const FockSpace& space, const Vectors& xis, const Vectors& etas);

/// Φ expanded over Π elements (alternating signs); `pi` evaluates the Π terms.
ComplexMatrix phi_from_pi(const FockSpace& space, const Vectors& xis, const Vectors& etas,
                          const BasisElementFn& pi);

/// Π expanded over Φ elements; `phi` evaluates the Φ terms.
ComplexMatrix pi_from_phi(const FockSpace& space, const Vectors& xis, const Vectors& etas,
                          const BasisElementFn& phi);

/// Columns are vec Φ(ξ_I; η_J) over all increasing index sets I, J, taking
/// ξ_i and η_j from the columns of the given n×n matrices.
ComplexMatrix phi_basis_matrix(const FockSpace& space, const ComplexMatrix& xiBasis,
                               const ComplexMatrix& etaBasis);

/// The projection 𝔭 defined by 𝔭Φ(ξ; η) = Φ(P₀ξ; P₀η), as a superoperator.
DenseSuperOperator phi_projection(const FockSpace& space, const ComplexMatrix& p0);

/// ‖e^{tL(A,O)} Φ(ξ; η) − Φ(e^{tA}ξ; e^{tA}η)‖_max.
double phi_evolution_check(const FockSpace& space, const ComplexMatrix& a, const Vectors& xis,
                           const Vectors& etas, double t);

// ---------------------------------------------------------------------------
// General (non gauge invariant) quadratic Liouvillians in Majorana form.

/// L(A, N) for real 2n×2n A and real antisymmetric N.
DenseSuperOperator super_majorana(const FockSpace& space, const RealMatrix& a,
                                  const RealMatrix& n);

/// Residual of [L(A,N), L(B,R)] = L([A,B], AR + RAᵗ − BN − NBᵗ).
double majorana_liouvillian_check(const FockSpace& space, const RealMatrix& a,
                                  const RealMatrix& n, const RealMatrix& b,
                                  const RealMatrix& r);

}  // namespace oqf::fock
