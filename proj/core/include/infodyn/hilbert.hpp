#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace infodyn {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;

/// The cyclic group Z_n acting as the index set G of L2(G) with counting
/// measure. Elements are the residues 0..n-1.
class IndexGroup {
 public:
  explicit IndexGroup(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t add(std::size_t k, std::size_t l) const noexcept { return (k + l) % n_; }
  [[nodiscard]] std::size_t sub(std::size_t k, std::size_t l) const noexcept { return (k + n_ - l % n_) % n_; }

 private:
  std::size_t n_;
};

/// <f, g> under counting measure, conjugate-linear in f.
[[nodiscard]] cplx inner_product(const Vector& f, const Vector& g);

/// Multiplication operator O_g: (O_g f)(k) = g(k) f(k).
[[nodiscard]] Matrix mult_operator(const Vector& g);

/// Cyclic shift (U_k f)(m) = f(k + m mod n).
[[nodiscard]] Matrix shift_unitary(std::size_t k, std::size_t n);

/// Diagonal embedding J: L2(G) -> L2(G x G), (Jf)(k,l) = f(k) delta_{k,l}.
/// Returned as an n^2 x n matrix; J* is its adjoint, (J* Phi)(k) = Phi(k,k).
[[nodiscard]] Matrix diag_embedding(std::size_t n);

/// Kronecker product. Index (a, b) of the product space maps to a * dim(B) + b.
[[nodiscard]] Matrix tensor(const Matrix& a, const Matrix& b);
[[nodiscard]] Vector tensor(const Vector& f, const Vector& g);

/// Traces out the factors listed in `traced` from an operator on
/// dims[0] x dims[1] x ... ; the remaining factors keep their order.
[[nodiscard]] Matrix partial_trace(const Matrix& x, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> traced);

[[nodiscard]] Matrix identity(std::size_t n);
[[nodiscard]] Matrix outer(const Vector& f, const Vector& g);  // |f><g|
[[nodiscard]] Matrix projector(const Vector& f);               // |f><f|

[[nodiscard]] bool is_hermitian(const Matrix& m, double tol = 1e-10);
[[nodiscard]] bool is_unitary(const Matrix& m, double tol = 1e-10);
[[nodiscard]] double max_abs_entry(const Matrix& m);

}  // namespace infodyn
