#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "infodyn/hilbert.hpp"

namespace infodyn {

inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Eigen-resolution of a self-adjoint operator into rank-one projections,
/// weights in descending order. `degenerate` is set when two consecutive
/// weights are closer than the degeneracy tolerance; in that case the
/// vectors spanning each repeated eigenspace are one arbitrary orthonormal
/// choice among many.
struct SchattenDecomposition {
  RealVector weights;
  Matrix vectors;  // column k is the unit vector whose projector is E_k
  bool degenerate = false;

  /// Index ranges [first, last) of eigenspaces with more than one vector.
  std::vector<std::pair<std::size_t, std::size_t>> degenerate_blocks;

  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(weights.size()); }
  [[nodiscard]] Matrix projection(std::size_t k) const { return projector(vectors.col(static_cast<Eigen::Index>(k))); }
  [[nodiscard]] Matrix reconstruct() const;
};

/// Positive unit-trace operator with a cached spectral decomposition.
/// Immutable after construction.
class DensityOperator {
 public:
  /// Validates self-adjointness (1e-10), positivity (eigenvalues below
  /// -1e-10 rejected, smaller negatives clamped to 0) and unit trace (1e-8),
  /// then renormalizes exactly.
  explicit DensityOperator(const Matrix& m);

  static DensityOperator pure(const Vector& psi);
  static DensityOperator maximally_mixed(std::size_t n);
  static DensityOperator diagonal(const RealVector& p);

  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const RealVector& eigenvalues() const noexcept { return spectrum_.weights; }
  [[nodiscard]] const Matrix& eigenvectors() const noexcept { return spectrum_.vectors; }
  [[nodiscard]] const SchattenDecomposition& spectrum() const noexcept { return spectrum_; }
  [[nodiscard]] bool is_pure(double tol = 1e-10) const;

 private:
  Matrix matrix_;
  SchattenDecomposition spectrum_;
};

/// Eigendecomposition of a Hermitian matrix, descending, with degeneracy
/// detection. Throws InvalidArgument when `m` is not self-adjoint.
[[nodiscard]] SchattenDecomposition eigen_decompose(const Matrix& m,
                                                    double degeneracy_tol = kDegeneracyTolerance);

[[nodiscard]] SchattenDecomposition spectral_decompose(const DensityOperator& rho,
                                                       double degeneracy_tol = kDegeneracyTolerance);

/// -sum p ln p with 0 ln 0 = 0.
[[nodiscard]] double shannon_entropy(std::span<const double> p);
[[nodiscard]] double von_neumann_entropy(const DensityOperator& rho);
/// Entropy of a positive operator given only its spectrum.
[[nodiscard]] double entropy_of_spectrum(const RealVector& eigenvalues);

/// Tr rho (ln rho - ln sigma); +infinity when supp rho is not inside supp sigma.
[[nodiscard]] double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class LogBase { natural, two };

/// Converts a nat-valued quantity for reporting.
[[nodiscard]] double in_base(double nats, LogBase base) noexcept;

}  // namespace infodyn
