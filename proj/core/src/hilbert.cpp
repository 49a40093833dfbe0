#include "infodyn/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infodyn/errors.hpp"

namespace infodyn {

IndexGroup::IndexGroup(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("IndexGroup: n must be at least 1");
}

cplx inner_product(const Vector& f, const Vector& g) {
  if (f.size() != g.size()) {
    throw DimensionMismatch("inner_product: lengths " + std::to_string(f.size()) + " and " +
                            std::to_string(g.size()));
  }
  return f.dot(g);  // Eigen conjugates the left operand
}

Matrix mult_operator(const Vector& g) {
  return g.asDiagonal();
}

Matrix shift_unitary(std::size_t k, std::size_t n) {
  if (n == 0 || k >= n) throw InvalidArgument("shift_unitary: need 0 <= k < n");
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t m = 0; m < n; ++m) {
    u(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>((k + m) % n)) = 1.0;
  }
  return u;
}

Matrix diag_embedding(std::size_t n) {
  if (n == 0) throw InvalidArgument("diag_embedding: n must be at least 1");
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix j = Matrix::Zero(dim * dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) j(k * dim + k, k) = 1.0;
  return j;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector tensor(const Vector& f, const Vector& g) {
  Vector out(f.size() * g.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) out.segment(i * g.size(), g.size()) = f(i) * g;
  return out;
}

Matrix partial_trace(const Matrix& x, std::span<const std::size_t> dims,
                     std::span<const std::size_t> traced) {
  std::size_t total = 1;
  for (auto d : dims) {
    if (d == 0) throw DimensionMismatch("partial_trace: zero-sized factor");
    total *= d;
  }
  if (x.rows() != x.cols() || static_cast<std::size_t>(x.rows()) != total) {
    throw DimensionMismatch("partial_trace: operator is " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + " but factors multiply to " + std::to_string(total));
  }
  std::vector<bool> is_traced(dims.size(), false);
  for (auto t : traced) {
    if (t >= dims.size()) throw DimensionMismatch("partial_trace: subsystem index out of range");
    is_traced[t] = true;
  }

  // Strides of the row-major multi-index, split into kept and traced parts so
  // that a full index is kept_offset[r] + traced_offset[t].
  std::vector<std::size_t> stride(dims.size());
  std::size_t s = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    stride[i] = s;
    s *= dims[i];
  }
  auto offsets = [&](bool want_traced) {
    std::vector<std::size_t> out{0};
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (is_traced[i] != want_traced) continue;
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[i]);
      for (auto base : out)
        for (std::size_t v = 0; v < dims[i]; ++v) next.push_back(base + v * stride[i]);
      out = std::move(next);
    }
    return out;
  };
  const auto kept_off = offsets(false);
  const auto traced_off = offsets(true);

  const auto k = static_cast<Eigen::Index>(kept_off.size());
  Matrix out = Matrix::Zero(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      cplx acc{0.0, 0.0};
      for (auto t : traced_off) {
        acc += x(static_cast<Eigen::Index>(kept_off[r] + t), static_cast<Eigen::Index>(kept_off[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Matrix identity(std::size_t n) {
  return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

Matrix outer(const Vector& f, const Vector& g) {
  return f * g.adjoint();
}

Matrix projector(const Vector& f) {
  return f * f.adjoint();
}

double max_abs_entry(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs_entry(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const auto n = static_cast<std::size_t>(m.rows());
  return max_abs_entry(m * m.adjoint() - identity(n)) <= tol &&
         max_abs_entry(m.adjoint() * m - identity(n)) <= tol;
}

}  // namespace infodyn
