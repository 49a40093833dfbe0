#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infodyn/channel.hpp"
#include "infodyn/density.hpp"
#include "infodyn/hilbert.hpp"

namespace infodyn {

/// Orthonormal basis (b_k) of L2(G) whose elements act as elementary signals.
class SignalBasis {
 public:
  enum class Kind { fourier, standard, custom };

  /// b_k(m) = n^{-1/2} exp(2 pi i k m / n).
  static SignalBasis fourier(std::size_t n);
  /// b_k = e_k.
  static SignalBasis standard(std::size_t n);
  /// Column k of `columns` is b_k; rejected unless the Gram matrix is the
  /// identity within 1e-12.
  static SignalBasis custom(const Matrix& columns);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(b_.cols()); }
  [[nodiscard]] const Matrix& matrix() const noexcept { return b_; }
  [[nodiscard]] Vector vector(std::size_t k) const { return b_.col(static_cast<Eigen::Index>(k)); }
  /// |b_k(m)| independent of m for every k.
  [[nodiscard]] bool uniform_modulus() const noexcept { return uniform_modulus_; }
  [[nodiscard]] double gram_error() const;

 private:
  SignalBasis(Kind kind, Matrix b);

  Kind kind_;
  Matrix b_;
  bool uniform_modulus_ = false;
};

[[nodiscard]] std::string to_string(SignalBasis::Kind kind);

/// The Bell-type system xi_{k,l} = (B_k (x) U_l) J 1 on L2(G^2) built from a
/// signal basis, with projections F_{i,j} and the reduction operators G_{i,j}.
class BellSystem {
 public:
  explicit BellSystem(SignalBasis basis);

  [[nodiscard]] const SignalBasis& basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_.dim(); }

  /// n^2 x n^2; column i * n + j holds xi_{i,j}.
  [[nodiscard]] const Matrix& xi_matrix() const noexcept { return xi_; }
  [[nodiscard]] Vector xi(std::size_t i, std::size_t j) const;
  [[nodiscard]] Matrix projection(std::size_t i, std::size_t j) const;  // F_{i,j}

  /// G_{i,j} = J^* (U_j B_i^* (x) 1), an n x n^2 matrix from L2(G^2) to L2(G).
  [[nodiscard]] Matrix g_operator(std::size_t i, std::size_t j) const;
  /// ||G_{i,j} Phi||^2 = sum_m |b_i(m+j)|^2 |Phi(m+j, m)|^2.
  [[nodiscard]] double g_norm_squared(std::size_t i, std::size_t j, const Vector& phi) const;

 private:
  void check_outcome(std::size_t i, std::size_t j) const;

  SignalBasis basis_;
  Matrix xi_;
};

/// e(gamma) = J gamma J^* on H2 (x) H3.
[[nodiscard]] DensityOperator entangle(const DensityOperator& gamma);

/// Full trace of (F_{i,j} (x) 1)(rho (x) e(gamma))(F_{i,j} (x) 1).
[[nodiscard]] double outcome_probability(std::size_t i, std::size_t j, const DensityOperator& rho,
                                         const DensityOperator& gamma, const BellSystem& bell);
/// All n^2 outcome probabilities in row-major (i, j) order.
[[nodiscard]] std::vector<double> outcome_probabilities(const DensityOperator& rho, const DensityOperator& gamma,
                                                        const BellSystem& bell);

/// Post-measurement memory state on H3 from the defining partial trace.
/// Throws ZeroProbabilityOutcome when the outcome probability is <= 1e-12.
[[nodiscard]] DensityOperator lambda_direct(std::size_t i, std::size_t j, const DensityOperator& rho,
                                            const DensityOperator& gamma, const BellSystem& bell);
/// The same state assembled from the spectral representations of rho and gamma
/// through G_{i,j}.
[[nodiscard]] DensityOperator lambda_spectral(std::size_t i, std::size_t j, const DensityOperator& rho,
                                              const DensityOperator& gamma, const BellSystem& bell);
/// The same state as the composition K^_gamma o K^j o K^_{|conj b_i><conj b_i|}.
/// Throws OutsideDomain naming whichever conditioning step has zero weight.
[[nodiscard]] DensityOperator lambda_composed(std::size_t i, std::size_t j, const DensityOperator& rho,
                                              const DensityOperator& gamma, const BellSystem& bell);

struct RecognitionPolicy {
  enum class Kind { sample, argmax, fixed };
  Kind kind = Kind::sample;
  std::size_t i = 0;
  std::size_t j = 0;

  static RecognitionPolicy sample() { return {Kind::sample, 0, 0}; }
  static RecognitionPolicy argmax() { return {Kind::argmax, 0, 0}; }
  static RecognitionPolicy fixed(std::size_t i, std::size_t j) { return {Kind::fixed, i, j}; }
};

struct RecognitionStep {
  std::size_t t = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double probability = 0.0;
  DensityOperator gamma;  // memory after this step
  double entropy_of_gamma = 0.0;
};

struct RecognitionState {
  std::optional<DensityOperator> processing;  // last signal consumed
  DensityOperator memory;
  std::vector<RecognitionStep> history;
};

/// Iterates gamma_{t+1} = Lambda_{i_t, j_t}(rho_t (x) gamma_t). The sample
/// policy draws outcomes by inverse CDF over row-major probabilities from
/// Rng(seed); argmax takes the first most likely outcome.
[[nodiscard]] RecognitionState recognize_sequence(const DensityOperator& initial_gamma,
                                                  std::span<const DensityOperator> signals, const BellSystem& bell,
                                                  const RecognitionPolicy& policy, std::uint64_t seed = 0);

}  // namespace infodyn
