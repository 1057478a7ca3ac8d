#include "oqf/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace oqf::fock {

namespace {

void require_modes(int modes, int cap, std::string_view what) {
  if (modes < 1 || modes > cap) {
    std::ostringstream os;
    os << what << ": mode count " << modes << " outside [1, " << cap << "]";
    throw InvalidInput(os.str());
  }
}

void require_operator(const FockSpace& space, const ComplexMatrix& op, std::string_view what) {
  if (op.rows() != space.dim() || op.cols() != space.dim()) {
    std::ostringstream os;
    os << what << ": operator is " << op.rows() << "x" << op.cols() << ", expected "
       << space.dim() << "x" << space.dim();
    throw InvalidInput(os.str());
  }
}

void require_mode_matrix(const FockSpace& space, const ComplexMatrix& a, std::string_view what) {
  if (a.rows() != space.modes() || a.cols() != space.modes()) {
    std::ostringstream os;
    os << what << ": expected " << space.modes() << "x" << space.modes() << " matrix, got "
       << a.rows() << "x" << a.cols();
    throw InvalidInput(os.str());
  }
}

void require_vectors(const FockSpace& space, const Vectors& vs, std::string_view what) {
  if (static_cast<int>(vs.size()) > space.modes()) {
    std::ostringstream os;
    os << what << ": " << vs.size() << " vectors exceed mode count " << space.modes();
    throw InvalidInput(os.str());
  }
  for (const auto& v : vs)
    if (v.size() != space.modes()) throw InvalidInput(std::string(what) + ": vector length mismatch");
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Shared body of the two expansions: Σ_{σ,τ} Σ_p sign(p) sgnσ sgnτ
// Π_{j≤p}(η_τ(j), ξ_σ(j)) / p! · term(ξ_σ(p+1..), η_τ(p+1..)) / ((n−p)!(m−p)!).
ComplexMatrix permutation_expansion(const FockSpace& space, const Vectors& xis,
                                    const Vectors& etas, const BasisElementFn& term,
                                    bool alternating) {
  require_vectors(space, xis, "basis expansion");
  require_vectors(space, etas, "basis expansion");
  const int n = static_cast<int>(xis.size());
  const int m = static_cast<int>(etas.size());
  ComplexMatrix total = ComplexMatrix::Zero(space.dim(), space.dim());

  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::vector<int> tau(m);
    std::iota(tau.begin(), tau.end(), 0);
    do {
      const double sign = permutation_sign(sigma) * permutation_sign(tau);
      for (int p = 0; p <= std::min(n, m); ++p) {
        Complex pairing = 1.0;
        for (int j = 0; j < p; ++j) pairing *= etas[tau[j]].dot(xis[sigma[j]]);
        if (pairing == 0.0) continue;
        Vectors rest_xi, rest_eta;
        for (int j = p; j < n; ++j) rest_xi.push_back(xis[sigma[j]]);
        for (int j = p; j < m; ++j) rest_eta.push_back(etas[tau[j]]);
        const double weight = (alternating && p % 2 == 1 ? -1.0 : 1.0) * sign /
                              (factorial(p) * factorial(n - p) * factorial(m - p));
        total += (weight * pairing) * term(rest_xi, rest_eta);
      }
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------

FockOperator::FockOperator(int modes_, ComplexMatrix matrix_)
    : modes(modes_), matrix(std::move(matrix_)) {
  require_modes(modes, kMaxModes, "FockOperator");
  const Eigen::Index dim = Eigen::Index{1} << modes;
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw InvalidInput("FockOperator: matrix must be 2^n x 2^n");
}

DenseSuperOperator::DenseSuperOperator(int modes_, ComplexMatrix matrix_)
    : modes(modes_), matrix(std::move(matrix_)) {
  require_modes(modes, kMaxModes, "DenseSuperOperator");
  const Eigen::Index dim = Eigen::Index{1} << (2 * modes);
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw InvalidInput("DenseSuperOperator: matrix must be 4^n x 4^n");
}

FockOperator DenseSuperOperator::apply(const FockOperator& rho) const {
  if (rho.modes != modes) throw InvalidInput("DenseSuperOperator::apply: mode count mismatch");
  const Eigen::Index dim = rho.matrix.rows();
  const ComplexVector out =
      matrix * Eigen::Map<const ComplexVector>(rho.matrix.data(), dim * dim);
  return {modes, Eigen::Map<const ComplexMatrix>(out.data(), dim, dim)};
}

DenseSuperOperator operator+(const DenseSuperOperator& x, const DenseSuperOperator& y) {
  return {x.modes, x.matrix + y.matrix};
}
DenseSuperOperator operator-(const DenseSuperOperator& x, const DenseSuperOperator& y) {
  return {x.modes, x.matrix - y.matrix};
}
DenseSuperOperator operator*(const DenseSuperOperator& x, const DenseSuperOperator& y) {
  return {x.modes, x.matrix * y.matrix};
}
DenseSuperOperator operator*(Complex s, const DenseSuperOperator& x) {
  return {x.modes, s * x.matrix};
}
DenseSuperOperator commutator(const DenseSuperOperator& x, const DenseSuperOperator& y) {
  return {x.modes, oqf::commutator(x.matrix, y.matrix)};
}
double max_abs(const DenseSuperOperator& x) { return oqf::max_abs(x.matrix); }

std::vector<FockOperator> build_car(int modes) {
  require_modes(modes, kMaxModes, "build_car");
  ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  ComplexMatrix parity = ComplexMatrix::Identity(2, 2);
  parity(1, 1) = -1.0;
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);

  std::vector<FockOperator> out;
  out.reserve(modes);
  for (int j = 0; j < modes; ++j) {
    ComplexMatrix op = ComplexMatrix::Identity(1, 1);
    for (int k = 0; k < modes; ++k) op = kron(op, k < j ? parity : (k == j ? lower : id2));
    out.emplace_back(modes, std::move(op));
  }
  return out;
}

FockSpace::FockSpace(int modes) : modes_(modes), dim_(Eigen::Index{1} << modes) {
  for (auto& op : build_car(modes)) {
    c_dag_.push_back(op.matrix.adjoint());
    c_.push_back(std::move(op.matrix));
  }
}

ComplexMatrix FockSpace::vacuum() const {
  ComplexMatrix omega = ComplexMatrix::Zero(dim_, dim_);
  omega(0, 0) = 1.0;
  return omega;
}

ComplexMatrix FockSpace::identity() const { return ComplexMatrix::Identity(dim_, dim_); }

ComplexMatrix FockSpace::quadratic(const ComplexMatrix& a) const {
  require_mode_matrix(*this, a, "quadratic");
  ComplexMatrix q = ComplexMatrix::Zero(dim_, dim_);
  for (int j = 0; j < modes_; ++j) {
    ComplexMatrix row = ComplexMatrix::Zero(dim_, dim_);
    for (int k = 0; k < modes_; ++k)
      if (a(j, k) != 0.0) row += a(j, k) * c_[k];
    q += c_dag_[j] * row;
  }
  return q;
}

ComplexMatrix FockSpace::creator(const ComplexVector& xi) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (int j = 0; j < modes_; ++j) out += xi(j) * c_dag_[j];
  return out;
}

ComplexMatrix FockSpace::annihilator(const ComplexVector& eta) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (int j = 0; j < modes_; ++j) out += std::conj(eta(j)) * c_[j];
  return out;
}

std::vector<ComplexMatrix> FockSpace::majoranas() const {
  const Complex i(0.0, 1.0);
  std::vector<ComplexMatrix> w;
  for (int m = 0; m < modes_; ++m) {
    w.push_back(c_[m] + c_dag_[m]);
    w.push_back(i * (c_[m] - c_dag_[m]));
  }
  return w;
}

ComplexVector FockSpace::vec(const ComplexMatrix& op) const {
  require_operator(*this, op, "vec");
  return Eigen::Map<const ComplexVector>(op.data(), op.size());
}

ComplexMatrix FockSpace::unvec(const ComplexVector& v) const {
  if (v.size() != dim_ * dim_) throw InvalidInput("unvec: length mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim_, dim_);
}

DenseSuperOperator FockSpace::super_identity() const {
  return {modes_, ComplexMatrix::Identity(dim_ * dim_, dim_ * dim_)};
}

DenseSuperOperator FockSpace::left(const ComplexMatrix& x) const {
  return {modes_, kron(identity(), x)};
}

DenseSuperOperator FockSpace::right(const ComplexMatrix& x) const {
  return {modes_, kron(x.transpose(), identity())};
}

DenseSuperOperator FockSpace::sandwich(const ComplexMatrix& x, const ComplexMatrix& y) const {
  return {modes_, kron(y.transpose(), x)};
}

// ---------------------------------------------------------------------------

DenseSuperOperator super_basic(const FockSpace& space, SuperKind kind, const ComplexMatrix& a) {
  require_mode_matrix(space, a, "super_basic");
  const int n = space.modes();
  const Eigen::Index d = space.dim();
  ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
  switch (kind) {
    case SuperKind::L:
      // Σ_j (c_j†)ᵀ ⊗ (Σ_k A_jk c_k)
      for (int j = 0; j < n; ++j) {
        ComplexMatrix inner = ComplexMatrix::Zero(d, d);
        for (int k = 0; k < n; ++k) inner += a(j, k) * space.c(k);
        out += kron(space.c_dag(j).transpose(), inner);
      }
      break;
    case SuperKind::G:
      // Σ_k c_kᵀ ⊗ (Σ_j A_jk c_j†)
      for (int k = 0; k < n; ++k) {
        ComplexMatrix inner = ComplexMatrix::Zero(d, d);
        for (int j = 0; j < n; ++j) inner += a(j, k) * space.c_dag(j);
        out += kron(space.c(k).transpose(), inner);
      }
      break;
    case SuperKind::F:
      return space.left(space.quadratic(a));
    case SuperKind::B:
      return space.right(space.quadratic(a));
  }
  return {n, std::move(out)};
}

DenseSuperOperator super_liouvillian(const FockSpace& space, const ComplexMatrix& a,
                                     const ComplexMatrix& m) {
  require_mode_matrix(space, a, "super_liouvillian");
  require_mode_matrix(space, m, "super_liouvillian");
  const ComplexMatrix a_dag = a.adjoint();
  return super_basic(space, SuperKind::L, -a - a_dag - m) +
         super_basic(space, SuperKind::G, m) + super_basic(space, SuperKind::F, a + m) +
         super_basic(space, SuperKind::B, a_dag + m) - m.trace() * space.super_identity();
}

DenseSuperOperator super_liouvillian(const FockSpace& space, const LiouvillianParams& p) {
  return super_liouvillian(space, p.a(), p.m());
}

FockOperator dense_evolve(const FockSpace& space, const LiouvillianParams& p,
                          const FockOperator& rho, double t) {
  require_modes(space.modes(), kMaxEvolveModes, "dense_evolve");
  require_operator(space, rho.matrix, "dense_evolve");
  if (!(t >= 0.0)) throw InvalidInput("dense_evolve: t must be >= 0");
  if (t == 0.0) return rho;
  const DenseSuperOperator gen = super_liouvillian(space, p);
  return DenseSuperOperator(space.modes(), mat_exp(t * gen.matrix)).apply(rho);
}

namespace {

struct CorrelationSpectrum {
  Eigen::VectorXd r;
  ComplexMatrix modes;  // eigenvectors as columns
};

CorrelationSpectrum correlation_spectrum(const FockSpace& space, const GaussianState& s) {
  require_mode_matrix(space, s.r(), "gaussian_density");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(s.r()));
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

FockOperator gaussian_density_product(const FockSpace& space, const GaussianState& s) {
  const auto [r, modes] = correlation_spectrum(space, s);
  const ComplexMatrix id = space.identity();
  ComplexMatrix rho = id;
  for (int j = 0; j < space.modes(); ++j) {
    const double rj = std::clamp(r(j), 0.0, 1.0);
    const ComplexMatrix b = space.annihilator(modes.col(j));
    const ComplexMatrix number = b.adjoint() * b;
    rho = rho * ((1.0 - rj) * (id - number) + rj * number);
  }
  return {space.modes(), hermitian_part(rho)};
}

FockOperator gaussian_density(const FockSpace& space, const GaussianState& s) {
  const auto [r, modes] = correlation_spectrum(space, s);
  constexpr double kInterior = 1e-9;
  if (r.minCoeff() <= kInterior || r.maxCoeff() >= 1.0 - kInterior)
    return gaussian_density_product(space, s);

  // log(R(I−R)⁻¹) through the shared eigenbasis, then exponentiate the
  // Hermitian quadratic form on the Fock space.
  Eigen::VectorXd log_odds(r.size());
  double det = 1.0;
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    log_odds(j) = std::log(r(j) / (1.0 - r(j)));
    det *= 1.0 - r(j);
  }
  const ComplexMatrix k = modes * log_odds.cast<Complex>().asDiagonal() * modes.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(space.quadratic(k)));
  const Eigen::VectorXd weights = es.eigenvalues().array().exp();
  const ComplexMatrix rho =
      det * es.eigenvectors() * weights.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  return {space.modes(), hermitian_part(rho)};
}

ComplexMatrix read_correlations(const FockSpace& space, const FockOperator& rho) {
  require_operator(space, rho.matrix, "read_correlations");
  const int n = space.modes();
  ComplexMatrix r(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) r(j, k) = (space.c_dag(k) * space.c(j) * rho.matrix).trace();
  return r;
}

double trace_distance(const FockOperator& rho, const FockOperator& sigma) {
  if (rho.modes != sigma.modes) throw InvalidInput("trace_distance: mode count mismatch");
  return 0.5 * Eigen::JacobiSVD<ComplexMatrix>(rho.matrix - sigma.matrix).singularValues().sum();
}

double von_neumann_entropy(const FockOperator& rho) {
  double s = 0.0;
  for (double p : hermitian_eigenvalues(rho.matrix))
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

// ---------------------------------------------------------------------------

ComplexMatrix pi_basis(const FockSpace& space, const Vectors& xis, const Vectors& etas) {
  require_vectors(space, xis, "pi_basis");
  require_vectors(space, etas, "pi_basis");
  ComplexMatrix out = space.vacuum();
  for (auto it = xis.rbegin(); it != xis.rend(); ++it) out = space.creator(*it) * out;
  for (auto it = etas.rbegin(); it != etas.rend(); ++it) out = out * space.annihilator(*it);
  return out;
}

ComplexMatrix phi_basis(const FockSpace& space, const Vectors& xis, const Vectors& etas) {
  require_vectors(space, xis, "phi_basis");
  require_vectors(space, etas, "phi_basis");
  if (xis.empty() || etas.empty()) return pi_basis(space, xis, etas);

  const Vectors rest_xi(xis.begin() + 1, xis.end());
  const Vectors rest_eta(etas.begin() + 1, etas.end());
  const ComplexMatrix inner = phi_basis(space, rest_xi, rest_eta);
  const int n = space.modes();
  const DenseSuperOperator step = super_liouvillian(
      space, ComplexMatrix::Zero(n, n), xis.front() * etas.front().adjoint());
  return step.apply(FockOperator(n, inner)).matrix;
}

ComplexMatrix phi_from_pi(const FockSpace& space, const Vectors& xis, const Vectors& etas,
                          const BasisElementFn& pi) {
  return permutation_expansion(space, xis, etas, pi, /*alternating=*/true);
}

ComplexMatrix pi_from_phi(const FockSpace& space, const Vectors& xis, const Vectors& etas,
                          const BasisElementFn& phi) {
  return permutation_expansion(space, xis, etas, phi, /*alternating=*/false);
}

namespace {

Vectors columns_in(const ComplexMatrix& basis, unsigned mask) {
  Vectors out;
  for (Eigen::Index i = 0; i < basis.cols(); ++i)
    if (mask & (1u << i)) out.push_back(basis.col(i));
  return out;
}

}  // namespace

ComplexMatrix phi_basis_matrix(const FockSpace& space, const ComplexMatrix& xiBasis,
                               const ComplexMatrix& etaBasis) {
  require_mode_matrix(space, xiBasis, "phi_basis_matrix");
  require_mode_matrix(space, etaBasis, "phi_basis_matrix");
  const unsigned subsets = 1u << space.modes();
  const Eigen::Index d2 = space.dim() * space.dim();
  ComplexMatrix out(d2, d2);
  Eigen::Index col = 0;
  for (unsigned xi_mask = 0; xi_mask < subsets; ++xi_mask)
    for (unsigned eta_mask = 0; eta_mask < subsets; ++eta_mask)
      out.col(col++) = space.vec(
          phi_basis(space, columns_in(xiBasis, xi_mask), columns_in(etaBasis, eta_mask)));
  return out;
}

DenseSuperOperator phi_projection(const FockSpace& space, const ComplexMatrix& p0) {
  require_mode_matrix(space, p0, "phi_projection");
  const ComplexMatrix id = ComplexMatrix::Identity(space.modes(), space.modes());
  const ComplexMatrix standard = phi_basis_matrix(space, id, id);
  const ComplexMatrix projected = phi_basis_matrix(space, p0, p0);
  // 𝔭 S = S' with S invertible (Φ over the standard basis spans the operator space).
  const ComplexMatrix p = standard.transpose().partialPivLu().solve(projected.transpose()).transpose();
  return {space.modes(), p};
}

double phi_evolution_check(const FockSpace& space, const ComplexMatrix& a, const Vectors& xis,
                           const Vectors& etas, double t) {
  require_mode_matrix(space, a, "phi_evolution_check");
  const int n = space.modes();
  const ComplexMatrix phi = phi_basis(space, xis, etas);
  const DenseSuperOperator gen = super_liouvillian(space, a, ComplexMatrix::Zero(n, n));
  const ComplexMatrix lhs = space.unvec(mat_exp(t * gen.matrix) * space.vec(phi));

  const ComplexMatrix prop = mat_exp(t * a);
  Vectors moved_xi, moved_eta;
  for (const auto& x : xis) moved_xi.push_back(prop * x);
  for (const auto& e : etas) moved_eta.push_back(prop * e);
  return oqf::max_abs(lhs - phi_basis(space, moved_xi, moved_eta));
}

// ---------------------------------------------------------------------------

DenseSuperOperator super_majorana(const FockSpace& space, const RealMatrix& a,
                                  const RealMatrix& n) {
  const int size = 2 * space.modes();
  if (a.rows() != size || a.cols() != size || n.rows() != size || n.cols() != size)
    throw InvalidInput("super_majorana: matrices must be 2n x 2n");
  if ((n + n.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInput("super_majorana: N must be antisymmetric");

  const auto w = space.majoranas();
  const Complex i(0.0, 1.0);
  const RealMatrix half_skew = (a - a.transpose()) / 2.0;
  const ComplexMatrix sandwich_coeff =
      (-a - a.transpose()).cast<Complex>() + 2.0 * i * n.cast<Complex>();

  const Eigen::Index d = space.dim();
  ComplexMatrix commuted = ComplexMatrix::Zero(d, d);      // Σ (A−Aᵗ)_jk/2 w_j w_k
  ComplexMatrix anticommuted = ComplexMatrix::Zero(d, d);  // Σ i N_jk w_j w_k
  DenseSuperOperator total(space.modes(), ComplexMatrix::Zero(d * d, d * d));
  for (int j = 0; j < size; ++j) {
    for (int k = 0; k < size; ++k) {
      const ComplexMatrix ww = w[j] * w[k];
      commuted += half_skew(j, k) * ww;
      anticommuted += i * n(j, k) * ww;
      if (sandwich_coeff(j, k) != 0.0)
        total.matrix += sandwich_coeff(j, k) * space.sandwich(w[j], w[k]).matrix;
    }
  }
  total = total + space.left(commuted) - space.right(commuted) + space.left(anticommuted) +
          space.right(anticommuted);
  return Complex(0.25) * total;
}

double majorana_liouvillian_check(const FockSpace& space, const RealMatrix& a,
                                  const RealMatrix& n, const RealMatrix& b,
                                  const RealMatrix& r) {
  const DenseSuperOperator lhs =
      commutator(super_majorana(space, a, n), super_majorana(space, b, r));
  const RealMatrix bracket_a = a * b - b * a;
  const RealMatrix bracket_n = a * r + r * a.transpose() - b * n - n * b.transpose();
  return max_abs(lhs - super_majorana(space, bracket_a, bracket_n));
}

}  // namespace oqf::fock
