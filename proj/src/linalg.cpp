#include "oqf/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace oqf {

void require_square(const ComplexMatrix& a, std::string_view what) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw InvalidInput(os.str());
  }
}

void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": size mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
       << b.cols();
    throw InvalidInput(os.str());
  }
}

void require_finite(const ComplexMatrix& a, std::string_view what) {
  if (!a.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) * 0.5; }

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Diagonal Padé coefficients b_0..b_m.
constexpr std::array<double, 4> kPade3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kPade5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kPade7 = {17297280., 8648640., 1995840., 277200.,
                                          25200.,    1512.,    56.,      1.};
constexpr std::array<double, 10> kPade9 = {17643225600., 8821612800., 2075673600., 302702400.,
                                           30270240.,    2162160.,    110880.,     3960.,
                                           90.,          1.};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

ComplexMatrix pade_solve(const ComplexMatrix& u, const ComplexMatrix& v) {
  return (v - u).partialPivLu().solve(v + u);
}

template <std::size_t N>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
  const auto n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = id;  // a^{2k}
  ComplexMatrix odd = ComplexMatrix::Zero(n, n);
  ComplexMatrix even = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; 2 * k < N; ++k) {
    even += b[2 * k] * power;
    if (2 * k + 1 < N) odd += b[2 * k + 1] * power;
    power = power * a2;
  }
  return pade_solve(a * odd, even);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  const auto n = a.rows();
  const auto& b = kPade13;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix inner_u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  const ComplexMatrix u =
      a * (inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                          b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

}  // namespace

ComplexMatrix mat_exp(const ComplexMatrix& a) {
  require_square(a, "mat_exp");
  require_finite(a, "mat_exp");
  const auto n = a.rows();
  if (n == 0) return a;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 <= kTheta3) return pade_low(a, kPade3);
  if (norm1 <= kTheta5) return pade_low(a, kPade5);
  if (norm1 <= kTheta7) return pade_low(a, kPade7);
  if (norm1 <= kTheta9) return pade_low(a, kPade9);

  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
  ComplexMatrix result = pade13(a / std::ldexp(1.0, squarings));
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

PropagatorIntegral propagator_and_integral(const ComplexMatrix& a, const ComplexMatrix& m,
                                           double t) {
  require_square(a, "van_loan_integral");
  require_same_size(a, m, "van_loan_integral");
  require_finite(a, "van_loan_integral");
  require_finite(m, "van_loan_integral");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("van_loan_integral: t must be >= 0");

  const auto n = a.rows();
  if (t == 0.0) return {ComplexMatrix::Identity(n, n), ComplexMatrix::Zero(n, n)};

  const double norm_a = a.cwiseAbs().colwise().sum().maxCoeff();
  const int doublings =
      norm_a * t > 1.0 ? static_cast<int>(std::ceil(std::log2(norm_a * t))) : 0;
  const double h = t / std::ldexp(1.0, doublings);

  ComplexMatrix block = ComplexMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = h * a;
  block.topRightCorner(n, n) = h * m;
  block.bottomRightCorner(n, n) = -h * a.adjoint();
  const ComplexMatrix e = mat_exp(block);

  ComplexMatrix prop = e.topLeftCorner(n, n);
  ComplexMatrix integral = e.topRightCorner(n, n) * prop.adjoint();
  for (int k = 0; k < doublings; ++k) {
    integral += prop * integral * prop.adjoint();
    prop = prop * prop;
  }

  // The map M ↦ ∫ e^{sA} M e^{sA†} ds commutes with †.
  if (is_hermitian(m, 1e-14 * (1.0 + max_abs(m)))) integral = hermitian_part(integral);
  return {std::move(prop), std::move(integral)};
}

ComplexMatrix van_loan_integral(const ComplexMatrix& a, const ComplexMatrix& m, double t) {
  return propagator_and_integral(a, m, t).integral;
}

ComplexMatrix lyapunov_solve(const ComplexMatrix& a, const ComplexMatrix& m) {
  require_square(a, "lyapunov_solve");
  require_same_size(a, m, "lyapunov_solve");
  require_finite(a, "lyapunov_solve");
  require_finite(m, "lyapunov_solve");
  const auto n = a.rows();
  if (n == 0) return m;

  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
  const auto& lambda = es.eigenvalues();
  const double scale = std::max(1.0, spectral_norm(a));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex s = lambda(i) + std::conj(lambda(j));
      if (std::abs(s) <= 1e-10 * scale) {
        std::ostringstream os;
        os << "lyapunov_solve: near-resonant eigenvalue pair lambda_" << i + 1 << " = "
           << lambda(i) << ", lambda_" << j + 1 << " = " << lambda(j)
           << " (lambda_i + conj(lambda_j) = " << s << ")";
        throw NumericalError(os.str());
      }
    }
  }

  // Column stacking: vec(AT) = (I ⊗ A) vec T, vec(T A†) = (conj(A) ⊗ I) vec T.
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix system = kron(id, a) + kron(a.conjugate(), id);
  const ComplexVector rhs = -Eigen::Map<const ComplexVector>(m.data(), n * n);
  const ComplexVector x = system.partialPivLu().solve(rhs);
  ComplexMatrix t = Eigen::Map<const ComplexMatrix>(x.data(), n, n);
  if (is_hermitian(m, 1e-14 * (1.0 + max_abs(m)))) t = hermitian_part(t);
  return t;
}

SpectralSplit spectral_split(const ComplexMatrix& a, std::optional<double> reTol) {
  require_square(a, "spectral_split");
  require_finite(a, "spectral_split");
  const auto n = a.rows();
  const double norm = spectral_norm(a);

  SpectralSplit out;
  out.reTol = reTol.value_or(1e-9 * norm);
  if (out.reTol < 0.0) throw InvalidInput("spectral_split: reTol must be >= 0");

  const double dissipation = n == 0 ? 0.0 : hermitian_eigenvalues(-a - a.adjoint()).minCoeff();
  if (dissipation < -1e-10 * std::max(1.0, norm)) {
    std::ostringstream os;
    os << "spectral_split: -A - A^dagger is not positive semidefinite (min eigenvalue "
       << dissipation << ")";
    throw PhysicsError(os.str());
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
  const ComplexVector lambda = es.eigenvalues();
  std::vector<Eigen::Index> axis;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = std::abs(lambda(i).real());
    if (re <= out.reTol) {
      axis.push_back(i);
      out.imaginaryEigenvalues.push_back(lambda(i));
    } else if (re < 2.0 * out.reTol) {
      out.ambiguous = true;
    }
  }

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (axis.empty()) {
    out.p0 = ComplexMatrix::Zero(n, n);
  } else if (static_cast<Eigen::Index>(axis.size()) == n) {
    out.p0 = id;
  } else {
    // Group axis eigenvalues into clusters of (numerically) equal value; each
    // cluster's eigenspace is the null space of A - μI with dimension equal to
    // the cluster size, because axis eigenvalues are semisimple.
    const double cluster_tol = std::max(out.reTol, 1e-8 * std::max(1.0, norm));
    std::vector<bool> used(axis.size(), false);
    ComplexMatrix basis(n, 0);
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (used[i]) continue;
      Complex mu = 0.0;
      std::vector<std::size_t> members;
      for (std::size_t j = i; j < axis.size(); ++j) {
        if (!used[j] && std::abs(lambda(axis[j]) - lambda(axis[i])) <= cluster_tol) {
          used[j] = true;
          members.push_back(j);
          mu += lambda(axis[j]);
        }
      }
      mu /= static_cast<double>(members.size());
      Eigen::JacobiSVD<ComplexMatrix> svd(a - mu * id, Eigen::ComputeFullV);
      const auto k = static_cast<Eigen::Index>(members.size());
      basis.conservativeResize(n, basis.cols() + k);
      basis.rightCols(k) = svd.matrixV().rightCols(k);
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(basis);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, basis.cols());
    out.p0 = q * q.adjoint();
  }

  out.a0 = a * out.p0;
  out.aMinus = a - out.a0;
  return out;
}

}  // namespace oqf
