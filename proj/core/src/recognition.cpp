#include "infodyn/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "infodyn/errors.hpp"
#include "infodyn/random.hpp"

namespace infodyn {

namespace {

constexpr double kGramTolerance = 1e-12;

void require_dim(const DensityOperator& s, std::size_t n, const char* what) {
  if (s.dim() != n) {
    throw DimensionMismatch(std::string(what) + ": state has dimension " + std::to_string(s.dim()) +
                            ", signal basis has " + std::to_string(n));
  }
}

// Applies (<xi| (x) 1) X (|xi> (x) 1) for X on L2(G^2) (x) H3. Because F_{i,j}
// is rank one, (F (x) 1) X (F (x) 1) = F (x) M with this M, so M is both the
// partial trace over H1 (x) H2 and, through its trace, the outcome weight.
Matrix contract_outcome(const Vector& xi, const Matrix& joint, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n * n);
  const auto m = static_cast<Eigen::Index>(n);
  Matrix out = Matrix::Zero(m, m);
  for (Eigen::Index a = 0; a < nn; ++a) {
    const cplx left = std::conj(xi(a));
    if (left == cplx{}) continue;
    for (Eigen::Index b = 0; b < nn; ++b) {
      const cplx w = left * xi(b);
      if (w == cplx{}) continue;
      out.noalias() += w * joint.block(a * m, b * m, m, m);
    }
  }
  return out;
}

Matrix joint_state(const DensityOperator& rho, const DensityOperator& gamma) {
  return tensor(rho.matrix(), entangle(gamma).matrix());
}

DensityOperator normalized_or_throw(const Matrix& m, std::size_t i, std::size_t j) {
  const double p = m.trace().real();
  if (!(p > kProbabilityFloor)) {
    throw ZeroProbabilityOutcome("outcome (" + std::to_string(i) + ", " + std::to_string(j) + ") has probability " +
                                 std::to_string(p));
  }
  return DensityOperator(m / p);
}

}  // namespace

SignalBasis::SignalBasis(Kind kind, Matrix b) : kind_(kind), b_(std::move(b)) {
  if (b_.rows() == 0 || b_.rows() != b_.cols()) throw DimensionMismatch("SignalBasis: need n vectors of length n");
  if (gram_error() > kGramTolerance) throw InvalidArgument("SignalBasis: vectors are not orthonormal within 1e-12");
  uniform_modulus_ = true;
  for (Eigen::Index k = 0; k < b_.cols(); ++k) {
    const auto mod = b_.col(k).cwiseAbs();
    if (mod.maxCoeff() - mod.minCoeff() > kGramTolerance) uniform_modulus_ = false;
  }
}

SignalBasis SignalBasis::fourier(std::size_t n) {
  if (n == 0) throw InvalidArgument("SignalBasis::fourier: n must be positive");
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix b(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index m = 0; m < dim; ++m) {
      // Reduce k*m mod n first so the phase argument stays small.
      const auto km = static_cast<double>((k * m) % dim);
      b(m, k) = std::polar(scale, 2.0 * std::numbers::pi * km / static_cast<double>(n));
    }
  }
  return SignalBasis(Kind::fourier, std::move(b));
}

SignalBasis SignalBasis::standard(std::size_t n) {
  if (n == 0) throw InvalidArgument("SignalBasis::standard: n must be positive");
  return SignalBasis(Kind::standard, identity(n));
}

SignalBasis SignalBasis::custom(const Matrix& columns) {
  return SignalBasis(Kind::custom, columns);
}

double SignalBasis::gram_error() const {
  return max_abs_entry(b_.adjoint() * b_ - identity(dim()));
}

std::string to_string(SignalBasis::Kind kind) {
  switch (kind) {
    case SignalBasis::Kind::fourier: return "fourier";
    case SignalBasis::Kind::standard: return "standard";
    case SignalBasis::Kind::custom: return "custom";
  }
  return "unknown";
}

BellSystem::BellSystem(SignalBasis basis) : basis_(std::move(basis)) {
  const std::size_t n = basis_.dim();
  const auto nn = static_cast<Eigen::Index>(n * n);
  xi_ = Matrix::Zero(nn, nn);
  // xi_{k,l}(a, c) = b_k(a) delta_{a, l + c}.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      const auto col = static_cast<Eigen::Index>(k * n + l);
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t a = (l + c) % n;
        xi_(static_cast<Eigen::Index>(a * n + c), col) = basis_.matrix()(static_cast<Eigen::Index>(a),
                                                                         static_cast<Eigen::Index>(k));
      }
    }
  }
}

void BellSystem::check_outcome(std::size_t i, std::size_t j) const {
  if (i >= dim() || j >= dim()) {
    throw InvalidArgument("outcome (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range for n = " +
                          std::to_string(dim()));
  }
}

Vector BellSystem::xi(std::size_t i, std::size_t j) const {
  check_outcome(i, j);
  return xi_.col(static_cast<Eigen::Index>(i * dim() + j));
}

Matrix BellSystem::projection(std::size_t i, std::size_t j) const {
  return projector(xi(i, j));
}

Matrix BellSystem::g_operator(std::size_t i, std::size_t j) const {
  check_outcome(i, j);
  const std::size_t n = dim();
  const Matrix left = shift_unitary(j, n) * mult_operator(basis_.vector(i)).adjoint();
  return diag_embedding(n).adjoint() * tensor(left, identity(n));
}

double BellSystem::g_norm_squared(std::size_t i, std::size_t j, const Vector& phi) const {
  check_outcome(i, j);
  const std::size_t n = dim();
  if (static_cast<std::size_t>(phi.size()) != n * n) throw DimensionMismatch("g_norm_squared: Phi must live on G^2");
  double s = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t mj = (m + j) % n;
    s += std::norm(basis_.matrix()(static_cast<Eigen::Index>(mj), static_cast<Eigen::Index>(i))) *
         std::norm(phi(static_cast<Eigen::Index>(mj * n + m)));
  }
  return s;
}

DensityOperator entangle(const DensityOperator& gamma) {
  const Matrix j = diag_embedding(gamma.dim());
  return DensityOperator(j * gamma.matrix() * j.adjoint());
}

double outcome_probability(std::size_t i, std::size_t j, const DensityOperator& rho, const DensityOperator& gamma,
                           const BellSystem& bell) {
  require_dim(rho, bell.dim(), "outcome_probability");
  require_dim(gamma, bell.dim(), "outcome_probability");
  return contract_outcome(bell.xi(i, j), joint_state(rho, gamma), bell.dim()).trace().real();
}

std::vector<double> outcome_probabilities(const DensityOperator& rho, const DensityOperator& gamma,
                                          const BellSystem& bell) {
  require_dim(rho, bell.dim(), "outcome_probabilities");
  require_dim(gamma, bell.dim(), "outcome_probabilities");
  const std::size_t n = bell.dim();
  const Matrix joint = joint_state(rho, gamma);
  std::vector<double> p;
  p.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.push_back(contract_outcome(bell.xi(i, j), joint, n).trace().real());
  return p;
}

DensityOperator lambda_direct(std::size_t i, std::size_t j, const DensityOperator& rho, const DensityOperator& gamma,
                              const BellSystem& bell) {
  require_dim(rho, bell.dim(), "lambda_direct");
  require_dim(gamma, bell.dim(), "lambda_direct");
  return normalized_or_throw(contract_outcome(bell.xi(i, j), joint_state(rho, gamma), bell.dim()), i, j);
}

DensityOperator lambda_spectral(std::size_t i, std::size_t j, const DensityOperator& rho,
                                const DensityOperator& gamma, const BellSystem& bell) {
  require_dim(rho, bell.dim(), "lambda_spectral");
  require_dim(gamma, bell.dim(), "lambda_spectral");
  const std::size_t n = bell.dim();
  const Matrix g = bell.g_operator(i, j);
  const auto& alpha = rho.eigenvalues();
  const auto& beta = gamma.eigenvalues();
  Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    if (alpha(k) <= 0.0) continue;
    for (Eigen::Index l = 0; l < beta.size(); ++l) {
      if (beta(l) <= 0.0) continue;
      const Vector v = g * tensor(Vector(rho.eigenvectors().col(k)), Vector(gamma.eigenvectors().col(l)));
      acc.noalias() += alpha(k) * beta(l) * projector(v);
    }
  }
  return normalized_or_throw(acc, i, j);
}

DensityOperator lambda_composed(std::size_t i, std::size_t j, const DensityOperator& rho,
                                const DensityOperator& gamma, const BellSystem& bell) {
  require_dim(rho, bell.dim(), "lambda_composed");
  require_dim(gamma, bell.dim(), "lambda_composed");
  const std::size_t n = bell.dim();
  const TraceClassWeight filter = TraceClassWeight::rank_one(bell.basis().vector(i).conjugate());
  const Matrix filtered = k_tau_apply(filter, rho.matrix());
  if (!(filtered.trace().real() > kProbabilityFloor)) {
    throw OutsideDomain("lambda_composed: rho is outside the domain of the |conj b_" + std::to_string(i) +
                        "><conj b_" + std::to_string(i) + "| channel");
  }
  const Matrix u = shift_unitary(j, n);
  const Matrix shifted = u * (filtered / filtered.trace().real()) * u.adjoint();
  const Matrix stored = k_tau_apply(TraceClassWeight(gamma.matrix()), shifted);
  if (!(stored.trace().real() > kProbabilityFloor)) {
    throw OutsideDomain("lambda_composed: U_" + std::to_string(j) +
                        " K(rho) U* is outside the domain of the gamma channel");
  }
  return DensityOperator(stored / stored.trace().real());
}

RecognitionState recognize_sequence(const DensityOperator& initial_gamma, std::span<const DensityOperator> signals,
                                    const BellSystem& bell, const RecognitionPolicy& policy, std::uint64_t seed) {
  require_dim(initial_gamma, bell.dim(), "recognize_sequence");
  if (policy.kind == RecognitionPolicy::Kind::fixed && (policy.i >= bell.dim() || policy.j >= bell.dim())) {
    throw InvalidArgument("recognize_sequence: fixed outcome out of range");
  }
  const std::size_t n = bell.dim();
  RecognitionState state{std::nullopt, initial_gamma, {}};
  state.history.reserve(signals.size());
  Rng rng(seed);
  for (std::size_t t = 0; t < signals.size(); ++t) {
    const auto& rho = signals[t];
    require_dim(rho, n, "recognize_sequence");
    auto probs = outcome_probabilities(rho, state.memory, bell);
    for (auto& p : probs)
      if (p <= kProbabilityFloor) p = 0.0;

    std::size_t pick = 0;
    switch (policy.kind) {
      case RecognitionPolicy::Kind::fixed:
        pick = policy.i * n + policy.j;
        if (probs[pick] == 0.0) {
          throw ZeroProbabilityOutcome("recognize_sequence: step " + std::to_string(t) + " fixed outcome (" +
                                       std::to_string(policy.i) + ", " + std::to_string(policy.j) +
                                       ") has zero probability");
        }
        break;
      case RecognitionPolicy::Kind::argmax:
        pick = static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
        break;
      case RecognitionPolicy::Kind::sample: {
        double total = 0.0;
        for (double p : probs) total += p;
        const double u = uniform01(rng) * total;
        double cum = 0.0;
        pick = probs.size();
        for (std::size_t k = 0; k < probs.size(); ++k) {
          if (probs[k] == 0.0) continue;
          cum += probs[k];
          pick = k;
          if (u < cum) break;
        }
        if (pick == probs.size()) throw ZeroProbabilityOutcome("recognize_sequence: every outcome has zero probability");
        break;
      }
    }
    const std::size_t i = pick / n;
    const std::size_t j = pick % n;
    DensityOperator next = lambda_direct(i, j, rho, state.memory, bell);
    const double s = von_neumann_entropy(next);
    state.history.push_back(RecognitionStep{t, i, j, probs[pick], next, s});
    state.memory = std::move(next);
    state.processing = rho;
  }
  return state;
}

}  // namespace infodyn
