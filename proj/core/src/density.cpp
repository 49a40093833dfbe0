#include "infodyn/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "infodyn/errors.hpp"

namespace infodyn {

namespace {

// Eigenvalues of sigma at or below this are treated as its kernel.
constexpr double kKernelEigenvalue = 1e-14;
// Weight of rho on sigma's kernel above this makes S(rho||sigma) infinite.
constexpr double kSupportLeak = 1e-12;
// Round-off floor for quantities that are nonnegative in exact arithmetic.
constexpr double kRoundoffFloor = 1e-12;

double xlogx(double x) {
  return x > 0.0 ? x * std::log(x) : 0.0;
}

double clamp_roundoff(double v) {
  return (v < 0.0 && v > -kRoundoffFloor) ? 0.0 : v;
}

}  // namespace

Matrix SchattenDecomposition::reconstruct() const {
  const auto n = vectors.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < weights.size(); ++k) out += weights(k) * projector(vectors.col(k));
  return out;
}

SchattenDecomposition eigen_decompose(const Matrix& m, double degeneracy_tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigen_decompose: matrix is not square");
  if (!is_hermitian(m, kHermitianTolerance)) {
    throw InvalidArgument("eigen_decompose: operator is not self-adjoint within tolerance");
  }
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw Error("eigen_decompose: eigensolver did not converge");

  const auto n = h.rows();
  SchattenDecomposition out;
  out.weights.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.weights(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  Eigen::Index first = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k == n || out.weights(k - 1) - out.weights(k) > degeneracy_tol) {
      if (k - first > 1) {
        out.degenerate = true;
        out.degenerate_blocks.emplace_back(static_cast<std::size_t>(first), static_cast<std::size_t>(k));
      }
      first = k;
    }
  }
  return out;
}

DensityOperator::DensityOperator(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionMismatch("DensityOperator: matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw InvalidArgument("DensityOperator: non-finite entry");
  auto spec = eigen_decompose(m);
  const double smallest = spec.weights(spec.weights.size() - 1);
  if (smallest < -kPsdTolerance) {
    throw InvalidArgument("DensityOperator: eigenvalue " + std::to_string(smallest) + " is negative");
  }
  const double trace = spec.weights.sum();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw InvalidArgument("DensityOperator: trace " + std::to_string(trace) + " differs from 1");
  }
  bool clamped = false;
  for (auto& w : spec.weights) {
    if (w < 0.0) {
      w = 0.0;
      clamped = true;
    }
  }
  spec.weights /= spec.weights.sum();
  if (clamped) {
    matrix_ = spec.reconstruct();
  } else {
    matrix_ = 0.5 * (m + m.adjoint()) / trace;
  }
  spectrum_ = std::move(spec);
}

DensityOperator DensityOperator::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidArgument("DensityOperator::pure: zero vector");
  return DensityOperator(projector(psi / norm));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t n) {
  return DensityOperator(identity(n) / static_cast<double>(n));
}

DensityOperator DensityOperator::diagonal(const RealVector& p) {
  return DensityOperator(Matrix(p.cast<cplx>().asDiagonal()));
}

bool DensityOperator::is_pure(double tol) const {
  return std::abs(spectrum_.weights(0) - 1.0) <= tol;
}

SchattenDecomposition spectral_decompose(const DensityOperator& rho, double degeneracy_tol) {
  if (degeneracy_tol == kDegeneracyTolerance) return rho.spectrum();
  return eigen_decompose(rho.matrix(), degeneracy_tol);
}

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s -= xlogx(x);
  return clamp_roundoff(s);
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  return shannon_entropy(std::span<const double>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())));
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_of_spectrum(rho.eigenvalues());
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("relative_entropy: dimensions differ");
  const auto& mu = sigma.eigenvalues();
  const auto& v = sigma.eigenvectors();
  double cross = 0.0;  // Tr rho ln sigma
  double leak = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const double w = (v.col(j).adjoint() * rho.matrix() * v.col(j))(0, 0).real();
    if (mu(j) <= kKernelEigenvalue) {
      leak += w;
    } else {
      cross += w * std::log(mu(j));
    }
  }
  if (leak > kSupportLeak) return kInfinity;
  return clamp_roundoff(-von_neumann_entropy(rho) - cross);
}

double in_base(double nats, LogBase base) noexcept {
  return base == LogBase::two ? nats / std::numbers::ln2 : nats;
}

}  // namespace infodyn
