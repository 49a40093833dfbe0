#include "infodyn/channel.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "infodyn/errors.hpp"

namespace infodyn {

namespace {

void require_square(const Matrix& m, std::size_t n, const char* what) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != n) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                            " operator, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double min_hermitian_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(0.5 * (m + m.adjoint())),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().size() == 0 ? 0.0 : solver.eigenvalues()(0);
}

DensityOperator normalize(const Matrix& x, const char* what) {
  const double tr = x.trace().real();
  if (!(tr > kProbabilityFloor)) {
    throw OutsideDomain(std::string(what) + ": trace " + std::to_string(tr) + " is at or below the probability floor");
  }
  return DensityOperator(x / tr);
}

}  // namespace

TraceClassWeight::TraceClassWeight(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw DimensionMismatch("TraceClassWeight: matrix must be square");
  if (!is_hermitian(m, kHermitianTolerance)) throw InvalidArgument("TraceClassWeight: not self-adjoint");
  if (min_hermitian_eigenvalue(m) < -kPsdTolerance) throw InvalidArgument("TraceClassWeight: not positive");
  matrix_ = 0.5 * (m + m.adjoint());
}

TraceClassWeight TraceClassWeight::null(std::size_t n) {
  return TraceClassWeight(Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

TraceClassWeight TraceClassWeight::rank_one(const Vector& h) {
  return TraceClassWeight(projector(h));
}

TraceClassWeight TraceClassWeight::from_representation(const RealVector& weights, const Matrix& basis) {
  if (basis.cols() != weights.size()) throw DimensionMismatch("TraceClassWeight: weight/basis count differs");
  Matrix m = Matrix::Zero(basis.rows(), basis.rows());
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    if (weights(k) < 0.0) throw InvalidArgument("TraceClassWeight: negative weight");
    m += weights(k) * projector(basis.col(k));
  }
  return TraceClassWeight(m);
}

Matrix k_tau_apply(const TraceClassWeight& tau, const Matrix& rho) {
  require_square(rho, tau.dim(), "k_tau_apply");
  return tau.matrix().cwiseProduct(rho);
}

DensityOperator k_tau_hat_apply(const TraceClassWeight& tau, const DensityOperator& rho) {
  return normalize(k_tau_apply(tau, rho.matrix()), "k_tau_hat_apply");
}

DensityOperator unitary_channel(const Matrix& u, const DensityOperator& rho) {
  require_square(u, rho.dim(), "unitary_channel");
  if (!is_unitary(u)) throw InvalidArgument("unitary_channel: operator is not unitary within 1e-10");
  return DensityOperator(u * rho.matrix() * u.adjoint());
}

Matrix k_h_apply(const Vector& h, const Matrix& rho) {
  require_square(rho, static_cast<std::size_t>(h.size()), "k_h_apply");
  const Matrix o = mult_operator(h);
  return o * rho * o.adjoint();
}

DensityOperator k_hat_h_apply(const Vector& h, const DensityOperator& rho) {
  return normalize(k_h_apply(h, rho.matrix()), "k_hat_h_apply");
}

Dilation::Dilation(const Vector& h) : h_(h) {
  if (h.size() == 0) throw DimensionMismatch("dilation: empty function");
  if (!(h.norm() > 0.0)) throw InvalidArgument("dilation: h must have positive norm");
  const auto n = h.size();
  complement_.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mod = std::abs(h(k));
    if (mod > 1.0 + 1e-12) {
      throw InvalidArgument("dilation: |h(" + std::to_string(k) + ")| = " + std::to_string(mod) + " exceeds 1");
    }
    complement_(k) = std::sqrt(std::max(0.0, 1.0 - mod * mod));
  }
  t_ = Matrix::Zero(2 * n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    t_(k, k) = h(k);
    t_(n + k, k) = complement_(k);
  }
}

Matrix Dilation::unital_map(const Matrix& b) const {
  require_square(b, 2 * dim(), "Dilation::unital_map");
  return t_.adjoint() * b * t_;
}

Matrix Dilation::dilate(const Matrix& rho) const {
  require_square(rho, dim(), "Dilation::dilate");
  return t_ * rho * t_.adjoint();
}

double Dilation::branch_probability(const DensityOperator& rho, int branch) const {
  const Vector& f = branch == 0 ? h_ : complement_;
  return k_h_apply(f, rho.matrix()).trace().real();
}

DensityOperator Dilation::branch_state(const DensityOperator& rho, int branch) const {
  if (branch != 0 && branch != 1) throw InvalidArgument("Dilation::branch_state: branch must be 0 or 1");
  const auto n = static_cast<Eigen::Index>(dim());
  const Matrix big = dilate(rho.matrix());
  return normalize(big.block(branch * n, branch * n, n, n), "Dilation::branch_state");
}

Dilation dilation(const Vector& h) {
  return Dilation(h);
}

Channel Channel::kraus(std::vector<Matrix> ops) {
  if (ops.empty()) throw InvalidArgument("kraus channel: no operators");
  const auto out = static_cast<std::size_t>(ops.front().rows());
  const auto in = static_cast<std::size_t>(ops.front().cols());
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(in), static_cast<Eigen::Index>(in));
  for (const auto& a : ops) {
    if (static_cast<std::size_t>(a.rows()) != out || static_cast<std::size_t>(a.cols()) != in) {
      throw DimensionMismatch("kraus channel: operators have inconsistent shapes");
    }
    sum += a.adjoint() * a;
  }
  const Matrix gap = infodyn::identity(in) - sum;
  if (min_hermitian_eigenvalue(gap) < -1e-10) {
    throw InvalidArgument("kraus channel: sum of A^*A exceeds the identity");
  }
  Channel ch(Kind::kraus, in, out);
  ch.trace_preserving_ = max_abs_entry(gap) <= 1e-10;
  ch.kraus_ = std::move(ops);
  return ch;
}

Channel Channel::ktau(TraceClassWeight tau) {
  Channel ch(Kind::ktau, tau.dim(), tau.dim());
  // Tr(tau o rho) = Tr(rho) for all rho iff every diagonal entry of tau is 1.
  ch.trace_preserving_ = (tau.matrix().diagonal().array() - cplx{1.0, 0.0}).abs().maxCoeff() <= 1e-10;
  ch.matrix_ = tau.matrix();
  return ch;
}

Channel Channel::ktau_hat(TraceClassWeight tau) {
  Channel ch(Kind::ktau_hat, tau.dim(), tau.dim());
  ch.trace_preserving_ = true;
  ch.matrix_ = tau.matrix();
  return ch;
}

Channel Channel::unitary(const Matrix& u) {
  if (!is_unitary(u)) throw InvalidArgument("unitary channel: operator is not unitary within 1e-10");
  Channel ch(Kind::unitary, static_cast<std::size_t>(u.rows()), static_cast<std::size_t>(u.rows()));
  ch.trace_preserving_ = true;
  ch.matrix_ = u;
  return ch;
}

Channel Channel::stochastic(const RealMatrix& p) {
  if (p.rows() == 0 || p.cols() == 0) throw DimensionMismatch("stochastic channel: empty matrix");
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if ((p.row(i).array() < 0.0).any()) {
      throw InvalidArgument("stochastic channel: negative entry in row " + std::to_string(i));
    }
    if (std::abs(p.row(i).sum() - 1.0) > 1e-12) {
      throw InvalidArgument("stochastic channel: row " + std::to_string(i) + " does not sum to 1");
    }
  }
  Channel ch(Kind::stochastic, static_cast<std::size_t>(p.rows()), static_cast<std::size_t>(p.cols()));
  ch.trace_preserving_ = true;
  ch.stochastic_ = p;
  return ch;
}

Channel Channel::linear_map(std::size_t input_dim, std::size_t output_dim, LinearFn fn, bool trace_preserving) {
  if (!fn) throw InvalidArgument("linear_map channel: empty function");
  Channel ch(Kind::linear_map, input_dim, output_dim);
  ch.trace_preserving_ = trace_preserving;
  ch.fn_ = std::move(fn);
  return ch;
}

Channel Channel::identity(std::size_t n) {
  return unitary(infodyn::identity(n));
}

Channel Channel::depolarizing(std::size_t n) {
  return stochastic(RealMatrix::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n),
                                         1.0 / static_cast<double>(n)));
}

void Channel::require_input(std::size_t n) const {
  if (n != input_dim_) {
    throw DimensionMismatch("channel: input dimension " + std::to_string(n) + " but channel expects " +
                            std::to_string(input_dim_));
  }
}

Matrix Channel::apply_linear(const Matrix& x) const {
  if (x.rows() != x.cols()) throw DimensionMismatch("channel: operand is not square");
  require_input(static_cast<std::size_t>(x.rows()));
  switch (kind_) {
    case Kind::kraus: {
      Matrix out = Matrix::Zero(static_cast<Eigen::Index>(output_dim_), static_cast<Eigen::Index>(output_dim_));
      for (const auto& a : kraus_) out += a * x * a.adjoint();
      return out;
    }
    case Kind::ktau:
      return matrix_.cwiseProduct(x);
    case Kind::unitary:
      return matrix_ * x * matrix_.adjoint();
    case Kind::stochastic: {
      // Off-diagonal input is discarded; the diagonal is pushed forward as a
      // distribution (complex entries are carried for linearity).
      Matrix out = Matrix::Zero(static_cast<Eigen::Index>(output_dim_), static_cast<Eigen::Index>(output_dim_));
      out.diagonal() = stochastic_.transpose().cast<cplx>() * Eigen::VectorXcd(x.diagonal());
      return out;
    }
    case Kind::linear_map: {
      Matrix out = fn_(x);
      if (static_cast<std::size_t>(out.rows()) != output_dim_ || out.rows() != out.cols()) {
        throw DimensionMismatch("linear_map channel: function returned wrong shape");
      }
      return out;
    }
    case Kind::ktau_hat:
      break;
  }
  throw NonlinearChannel("channel: normalized K_tau is not linear");
}

DensityOperator Channel::apply(const DensityOperator& rho) const {
  require_input(rho.dim());
  if (kind_ == Kind::ktau_hat) return k_tau_hat_apply(TraceClassWeight(matrix_), rho);
  if (!trace_preserving_) {
    throw InvalidArgument("channel: " + to_string(kind_) + " channel is not trace preserving; use apply_linear");
  }
  return DensityOperator(apply_linear(rho.matrix()));
}

std::string to_string(Channel::Kind kind) {
  switch (kind) {
    case Channel::Kind::kraus: return "kraus";
    case Channel::Kind::ktau: return "ktau";
    case Channel::Kind::ktau_hat: return "ktau_hat";
    case Channel::Kind::unitary: return "unitary";
    case Channel::Kind::stochastic: return "stochastic";
    case Channel::Kind::linear_map: return "linear_map";
  }
  return "unknown";
}

ChoiReport choi_check(const Channel& channel) {
  if (!channel.is_linear()) throw NonlinearChannel("choi_check: channel is not linear");
  const auto n = static_cast<Eigen::Index>(channel.input_dim());
  const auto m = static_cast<Eigen::Index>(channel.output_dim());
  ChoiReport report;
  report.choi = Matrix::Zero(n * m, n * m);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      Matrix unit = Matrix::Zero(n, n);
      unit(a, b) = 1.0;
      report.choi.block(a * m, b * m, m, m) = channel.apply_linear(unit);
    }
  }
  report.min_eigenvalue = min_hermitian_eigenvalue(report.choi);
  report.completely_positive =
      is_hermitian(report.choi, 1e-9) && report.min_eigenvalue >= -kChoiTolerance;
  return report;
}

Channel stochastic_channel(const RealMatrix& p) {
  return Channel::stochastic(p);
}

}  // namespace infodyn
