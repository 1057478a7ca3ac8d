#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oqf/fock_oracle.hpp"

namespace oqf::verify {

/// One identity evaluated as a dense residual (largest absolute entry of
/// lhs − rhs).
struct IdentityCheck {
  std::string name;
  std::string formula;
  double residual = 0.0;
  double tolerance = 0.0;

  bool passed() const { return residual <= tolerance; }
};

/// The ten commutators among L̂, Ĝ, F̂, B̂ for one pair (C, D).
std::vector<IdentityCheck> superoperator_commutators(const fock::FockSpace& space,
                                                     const ComplexMatrix& c,
                                                     const ComplexMatrix& d);

/// The six relations for F̂−L̂, B̂−L̂ and Ŝ = F̂ + B̂ − L̂ + Ĝ used to assemble
/// the Liouvillian commutator.
std::vector<IdentityCheck> auxiliary_commutators(const fock::FockSpace& space,
                                                 const ComplexMatrix& c, const ComplexMatrix& d);

/// [L(A,M), L(B,N)] = L([A,B], AN + NA† − BM − MB†).
IdentityCheck liouvillian_commutator(const fock::FockSpace& space, const ComplexMatrix& a,
                                     const ComplexMatrix& m, const ComplexMatrix& b,
                                     const ComplexMatrix& n);

/// e^{tL(A,M)} = e^{L(O, ∫₀ᵗ e^{sA}Me^{sA†}ds)} e^{tL(A,O)}.
IdentityCheck factorization(const fock::FockSpace& space, const LiouvillianParams& p, double t);

/// Every identity the oracle can check, on instances drawn from `seed`, in a
/// fixed order. `toleranceOverride` replaces every per-identity tolerance.
std::vector<IdentityCheck> run_identity_suite(int modes, std::uint64_t seed,
                                              std::optional<double> toleranceOverride = {});

}  // namespace oqf::verify
