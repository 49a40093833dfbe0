#include "infodyn/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "infodyn/errors.hpp"

namespace infodyn {

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u = 1.0 - uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

cplx complex_normal(Rng& rng) {
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = complex_normal(rng);
  return g;
}

Matrix random_unitary(std::size_t n, Rng& rng) {
  const Eigen::MatrixXcd g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mod = std::abs(r(k, k));
    if (mod > 0.0) q.col(k) *= r(k, k) / mod;
  }
  return q;
}

Matrix random_hermitian(std::size_t n, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

Vector random_unit_vector(std::size_t n, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = complex_normal(rng);
  return v / v.norm();
}

DensityOperator random_density(std::size_t n, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(rho);
}

DensityOperator random_pure(std::size_t n, Rng& rng) {
  return DensityOperator::pure(random_unit_vector(n, rng));
}

DensityOperator random_density_with_spectrum(const RealVector& weights, Rng& rng) {
  const auto n = static_cast<std::size_t>(weights.size());
  const Matrix u = random_unitary(n, rng);
  Matrix rho = u * weights.cast<cplx>().asDiagonal() * u.adjoint();
  return DensityOperator(rho);
}

Channel random_kraus_channel(std::size_t n_in, std::size_t n_out, std::size_t ops, Rng& rng) {
  if (ops == 0) throw InvalidArgument("random_kraus_channel: need at least one operator");
  std::vector<Matrix> a;
  a.reserve(ops);
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(n_in), static_cast<Eigen::Index>(n_in));
  for (std::size_t k = 0; k < ops; ++k) {
    a.push_back(ginibre(n_out, n_in, rng));
    sum += a.back().adjoint() * a.back();
  }
  // Normalize by sum^{-1/2} so that sum_k A_k^* A_k = I.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver{Eigen::MatrixXcd(sum)};
  const Eigen::VectorXd inv_sqrt = solver.eigenvalues().cwiseSqrt().cwiseInverse();
  const Matrix s = solver.eigenvectors() * inv_sqrt.cast<cplx>().asDiagonal() * solver.eigenvectors().adjoint();
  for (auto& m : a) m = m * s;
  return Channel::kraus(std::move(a));
}

}  // namespace infodyn
