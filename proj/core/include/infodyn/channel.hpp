#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "infodyn/density.hpp"
#include "infodyn/hilbert.hpp"

namespace infodyn {

/// Probability floor for conditioning-domain membership.
inline constexpr double kProbabilityFloor = 1e-12;

/// A positive semidefinite weight operator tau (trace arbitrary, the null
/// operator allowed) parameterizing the mixture channel K_tau.
class TraceClassWeight {
 public:
  explicit TraceClassWeight(const Matrix& m);

  static TraceClassWeight null(std::size_t n);
  static TraceClassWeight rank_one(const Vector& h);  // |h><h|
  /// sum_k gamma_k |h_k><h_k| for an orthonormal family (columns of `basis`).
  static TraceClassWeight from_representation(const RealVector& weights, const Matrix& basis);

  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] bool is_null() const noexcept { return matrix_.isZero(0.0); }

 private:
  Matrix matrix_;
};

/// K_tau(rho) = sum_k gamma_k O_{h_k} rho O_{h_k}^*. In the coordinates of G
/// this is the entrywise product tau_ab * rho_ab, which is what is computed.
[[nodiscard]] Matrix k_tau_apply(const TraceClassWeight& tau, const Matrix& rho);

/// Normalized K_tau. Throws OutsideDomain when Tr K_tau(rho) <= 1e-12.
[[nodiscard]] DensityOperator k_tau_hat_apply(const TraceClassWeight& tau, const DensityOperator& rho);

/// U rho U^*. Throws InvalidArgument when U is not unitary within 1e-10.
[[nodiscard]] DensityOperator unitary_channel(const Matrix& u, const DensityOperator& rho);

/// K^h(rho) = O_h rho O_h^* (unnormalized single-function channel).
[[nodiscard]] Matrix k_h_apply(const Vector& h, const Matrix& rho);
/// Normalized K^h; the branch-1 measurement outcome of the dilation t_h.
[[nodiscard]] DensityOperator k_hat_h_apply(const Vector& h, const DensityOperator& rho);

/// Isometric dilation t_h: L2(G) -> L2({1,2} x G) of a function h with
/// |h(k)| <= 1, and the unital map E_h(B) = t_h^* B t_h.
class Dilation {
 public:
  explicit Dilation(const Vector& h);

  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(h_.size()); }
  [[nodiscard]] const Vector& h() const noexcept { return h_; }
  /// sqrt(1 - |h|^2), the branch-2 function.
  [[nodiscard]] const Vector& complement() const noexcept { return complement_; }
  /// 2n x n; row index l * n + k for branch l in {0, 1}.
  [[nodiscard]] const Matrix& isometry() const noexcept { return t_; }

  [[nodiscard]] Matrix unital_map(const Matrix& b) const;          // E_h
  [[nodiscard]] Matrix dilate(const Matrix& rho) const;            // E_h^*(rho) = t rho t^*
  [[nodiscard]] double branch_probability(const DensityOperator& rho, int branch) const;
  /// Post-measurement state on L2(G) for branch 0 (K^h) or 1 (K^{sqrt(1-|h|^2)}).
  [[nodiscard]] DensityOperator branch_state(const DensityOperator& rho, int branch) const;

 private:
  Vector h_;
  Vector complement_;
  Matrix t_;
};

[[nodiscard]] Dilation dilation(const Vector& h);

/// State-to-state map. Linear kinds act on arbitrary operators; the
/// normalized K_tau kind is nonlinear and only acts on states.
class Channel {
 public:
  enum class Kind { kraus, ktau, ktau_hat, unitary, stochastic, linear_map };

  using LinearFn = std::function<Matrix(const Matrix&)>;

  static Channel kraus(std::vector<Matrix> ops);
  static Channel ktau(TraceClassWeight tau);
  static Channel ktau_hat(TraceClassWeight tau);
  static Channel unitary(const Matrix& u);
  /// Row-stochastic P: Lambda(rho) = sum_i rho_ii diag(P_i). Rows must be
  /// nonnegative and sum to 1 within 1e-12.
  static Channel stochastic(const RealMatrix& p);
  /// Arbitrary linear map, used for maps with no Kraus form (e.g. transpose).
  static Channel linear_map(std::size_t input_dim, std::size_t output_dim, LinearFn fn, bool trace_preserving);

  static Channel identity(std::size_t n);
  /// rho -> I/n for every rho.
  static Channel depolarizing(std::size_t n);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_linear() const noexcept { return kind_ != Kind::ktau_hat; }
  [[nodiscard]] bool is_trace_preserving() const noexcept { return trace_preserving_; }
  [[nodiscard]] std::size_t input_dim() const noexcept { return input_dim_; }
  [[nodiscard]] std::size_t output_dim() const noexcept { return output_dim_; }
  [[nodiscard]] const std::vector<Matrix>& kraus_ops() const noexcept { return kraus_; }
  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const RealMatrix& stochastic_matrix() const noexcept { return stochastic_; }

  /// Linear action on an arbitrary operator. Throws NonlinearChannel for ktau_hat.
  [[nodiscard]] Matrix apply_linear(const Matrix& x) const;
  /// Action on a state; the result is renormalized only for ktau_hat.
  /// Non-trace-preserving linear kinds throw InvalidArgument.
  [[nodiscard]] DensityOperator apply(const DensityOperator& rho) const;

 private:
  Channel(Kind kind, std::size_t in, std::size_t out) : kind_(kind), input_dim_(in), output_dim_(out) {}
  void require_input(std::size_t n) const;

  Kind kind_;
  std::size_t input_dim_;
  std::size_t output_dim_;
  bool trace_preserving_ = false;
  std::vector<Matrix> kraus_;
  Matrix matrix_;  // tau for ktau kinds, U for unitary
  RealMatrix stochastic_;
  LinearFn fn_;
};

[[nodiscard]] std::string to_string(Channel::Kind kind);

struct ChoiReport {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
  Matrix choi;
};

inline constexpr double kChoiTolerance = 1e-9;

/// Choi matrix sum_ab |a><b| (x) Lambda(|a><b|). Throws NonlinearChannel for ktau_hat.
[[nodiscard]] ChoiReport choi_check(const Channel& channel);

[[nodiscard]] Channel stochastic_channel(const RealMatrix& p);

}  // namespace infodyn
