#include "infodyn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infodyn/errors.hpp"
#include "infodyn/parallel.hpp"
#include "infodyn/random.hpp"

namespace infodyn {

namespace {

// Decomposition weights at or below this contribute nothing (their images can
// sit in the numerical kernel of Lambda rho).
constexpr double kWeightFloor = 1e-14;
constexpr double kChaosTieTolerance = 1e-10;

void require_linear_tp(const Channel& channel, const char* what) {
  if (!channel.is_linear()) throw NonlinearChannel(std::string(what) + ": channel must be linear");
  if (!channel.is_trace_preserving()) {
    throw InvalidArgument(std::string(what) + ": channel must be trace preserving");
  }
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

void ComplexityConfig::validate() const {
  if (restarts < 1) throw InvalidArgument("ComplexityConfig: restarts must be at least 1");
  if (!(degeneracy_tol > 0.0)) throw InvalidArgument("ComplexityConfig: degeneracy tolerance must be positive");
}

double complexity_C(const DensityOperator& rho) {
  return von_neumann_entropy(rho);
}

DecompositionValue evaluate_decomposition(const SchattenDecomposition& decomposition, const Channel& channel,
                                          const DensityOperator& image) {
  DecompositionValue out;
  for (std::size_t k = 0; k < decomposition.size(); ++k) {
    const double p = decomposition.weights(static_cast<Eigen::Index>(k));
    if (p <= kWeightFloor) continue;
    const DensityOperator branch(channel.apply_linear(decomposition.projection(k)));
    out.chaos += p * von_neumann_entropy(branch);
    out.transmitted += p * relative_entropy(branch, image);
  }
  return out;
}

SchattenDecomposition sample_decomposition(const SchattenDecomposition& base, std::uint64_t seed,
                                           std::size_t restart) {
  if (restart == 0 || !base.degenerate) return base;
  SchattenDecomposition out = base;
  Rng rng(seed + restart);
  for (const auto& [first, last] : base.degenerate_blocks) {
    const auto a = static_cast<Eigen::Index>(first);
    const auto d = static_cast<Eigen::Index>(last - first);
    const Matrix u = random_unitary(static_cast<std::size_t>(d), rng);
    out.vectors.middleCols(a, d) = Matrix(base.vectors.middleCols(a, d) * u);
    out.weights.segment(a, d).setConstant(base.weights.segment(a, d).mean());
  }
  return out;
}

ChaosDegreeReport chaos_degree_quantum(const DensityOperator& rho, const Channel& channel,
                                       const ComplexityConfig& cfg) {
  cfg.validate();
  require_linear_tp(channel, "chaos_degree_quantum");
  if (channel.input_dim() != rho.dim()) {
    throw DimensionMismatch("chaos_degree_quantum: state has dimension " + std::to_string(rho.dim()) +
                            ", channel expects " + std::to_string(channel.input_dim()));
  }
  const DensityOperator image(channel.apply_linear(rho.matrix()));
  const SchattenDecomposition base = spectral_decompose(rho, cfg.degeneracy_tol);

  ChaosDegreeReport report;
  report.S_out = von_neumann_entropy(image);
  report.degenerate = base.degenerate;
  report.seed = cfg.seed;
  report.restarts = base.degenerate ? cfg.restarts : 1;

  std::vector<DecompositionValue> values(report.restarts);
  parallel_for(report.restarts, cfg.threads, [&](std::size_t r) {
    values[r] = evaluate_decomposition(sample_decomposition(base, cfg.seed, r), channel, image);
  });

  std::size_t best = 0;
  report.worst = values[0].chaos;
  report.T = values[0].transmitted;
  for (std::size_t r = 1; r < values.size(); ++r) {
    if (values[r].chaos < values[best].chaos) best = r;
    report.worst = std::max(report.worst, values[r].chaos);
    report.T = std::max(report.T, values[r].transmitted);
  }
  report.D = values[best].chaos;
  report.best = report.D;
  report.decomposition = sample_decomposition(base, cfg.seed, best);
  return report;
}

double transmitted_T(const DensityOperator& rho, const Channel& channel, const ComplexityConfig& cfg) {
  return chaos_degree_quantum(rho, channel, cfg).T;
}

std::string to_string(DynamicsLabel label) {
  switch (label) {
    case DynamicsLabel::stable: return "stable";
    case DynamicsLabel::weak_stable: return "weak_stable";
    case DynamicsLabel::chaotic: return "chaotic";
  }
  return "unknown";
}

DynamicsLabel classify_dynamics(std::span<const double> values, double eps_zero, double eps_const) {
  if (values.empty()) throw InvalidArgument("classify_dynamics: empty sequence");
  const bool all_zero = std::all_of(values.begin(), values.end(), [&](double d) { return std::abs(d) <= eps_zero; });
  if (all_zero) return DynamicsLabel::stable;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double mean = 0.0;
  for (double d : values) mean += d;
  mean /= static_cast<double>(values.size());
  if (*hi - *lo <= eps_const && mean > eps_zero) return DynamicsLabel::weak_stable;
  return DynamicsLabel::chaotic;
}

ValueQuery::ValueQuery(const Matrix& q) {
  if (q.rows() == 0 || q.rows() != q.cols()) throw DimensionMismatch("ValueQuery: Q must be square");
  if (!is_hermitian(q, 1e-10)) throw InvalidArgument("ValueQuery: Q is not self-adjoint within 1e-10");
  q_ = q;
}

double value_of_information(const DensityOperator& rho_p, const DensityOperator& gamma_o, const Channel& channel,
                            const ValueQuery& q) {
  const Matrix joint = tensor(rho_p.matrix(), gamma_o.matrix());
  if (static_cast<std::size_t>(joint.rows()) != channel.input_dim()) {
    throw DimensionMismatch("value_of_information: composite dimension " + std::to_string(joint.rows()) +
                            " but channel expects " + std::to_string(channel.input_dim()));
  }
  if (q.dim() != channel.output_dim()) {
    throw DimensionMismatch("value_of_information: Q has dimension " + std::to_string(q.dim()) +
                            " but channel output is " + std::to_string(channel.output_dim()));
  }
  const Matrix out = channel.is_linear() ? channel.apply_linear(joint)
                                         : channel.apply(DensityOperator(joint)).matrix();
  const cplx v = (out * q.matrix()).trace();
  if (std::abs(v.imag()) > 1e-10) {
    throw InvalidArgument("value_of_information: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

std::string to_string(Preference p) {
  switch (p) {
    case Preference::first: return "first";
    case Preference::second: return "second";
    case Preference::tie: return "tie";
  }
  return "unknown";
}

namespace {

Comparison order(double a, double b) {
  Comparison c{Preference::tie, a, b};
  if (!close(a, b, kValueTieTolerance)) c.preferred = a > b ? Preference::first : Preference::second;
  return c;
}

}  // namespace

Comparison compare_signals(const DensityOperator& rho, const DensityOperator& rho_prime,
                           const DensityOperator& gamma_o, const Channel& channel, const ValueQuery& q) {
  return order(value_of_information(rho, gamma_o, channel, q), value_of_information(rho_prime, gamma_o, channel, q));
}

Comparison compare_channels(const DensityOperator& rho, const DensityOperator& gamma_o, const Channel& channel,
                            const Channel& channel_prime, const ValueQuery& q) {
  return order(value_of_information(rho, gamma_o, channel, q), value_of_information(rho, gamma_o, channel_prime, q));
}

ConjectureRow conjecture_experiment(const DensityOperator& rho, const DensityOperator& gamma_o,
                                    const Channel& channel, const Channel& channel_prime, const ValueQuery& q,
                                    const ComplexityConfig& cfg) {
  const DensityOperator joint(tensor(rho.matrix(), gamma_o.matrix()));
  ConjectureRow row;
  row.D = chaos_degree_quantum(joint, channel, cfg).D;
  row.D_prime = chaos_degree_quantum(joint, channel_prime, cfg).D;
  row.V = value_of_information(rho, gamma_o, channel, q);
  row.V_prime = value_of_information(rho, gamma_o, channel_prime, q);

  const bool d_tie = close(row.D, row.D_prime, kChaosTieTolerance);
  const bool v_tie = close(row.V, row.V_prime, kValueTieTolerance);
  const bool d_le = d_tie || row.D < row.D_prime;
  const bool d_ge = d_tie || row.D > row.D_prime;
  const bool v_ge = v_tie || row.V > row.V_prime;
  const bool v_le = v_tie || row.V < row.V_prime;
  row.agree = (d_le == v_ge) && (d_ge == v_le);
  return row;
}

double agreement_rate(std::span<const ConjectureRow> rows) {
  if (rows.empty()) return 0.0;
  const auto n = std::count_if(rows.begin(), rows.end(), [](const ConjectureRow& r) { return r.agree; });
  return static_cast<double>(n) / static_cast<double>(rows.size());
}

ConjectureBatch random_conjecture_batch(std::size_t count, std::size_t dim_p, std::size_t dim_o,
                                        std::uint64_t seed, const ComplexityConfig& cfg) {
  if (dim_p < 1 || dim_o < 1) throw InvalidArgument("random_conjecture_batch: dimensions must be positive");
  const std::size_t n = dim_p * dim_o;
  Rng rng(seed);
  ConjectureBatch batch;
  batch.rows.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    const auto rho = random_density(dim_p, rng);
    const auto gamma = random_density(dim_o, rng);
    const auto lambda = random_kraus_channel(n, n, 1 + rng() % 4, rng);
    const auto lambda_prime = random_kraus_channel(n, n, 1 + rng() % 4, rng);
    const ValueQuery q(random_hermitian(n, rng));
    batch.rows.push_back(conjecture_experiment(rho, gamma, lambda, lambda_prime, q, cfg));
  }
  batch.agreement_rate = agreement_rate(batch.rows);
  return batch;
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

AxiomReport axiom_suite(std::size_t dim, std::size_t trials, std::uint64_t seed, const ComplexityConfig& cfg) {
  if (dim < 2 || dim > 8) throw InvalidArgument("axiom_suite: dimension must be in [2, 8]");
  if (trials < 1) throw InvalidArgument("axiom_suite: need at least one trial");
  cfg.validate();

  ComplexityConfig search = cfg;
  search.restarts = std::min<std::size_t>(cfg.restarts, 32);
  search.seed = seed;

  AxiomReport report;
  report.dim = dim;
  report.trials = trials;
  report.seed = seed;

  double dev_nonneg = 0.0;
  double dev_invariance = 0.0;
  double dev_additivity = 0.0;
  double dev_bound = 0.0;
  double dev_identity = 0.0;

  const Channel id = Channel::identity(dim);
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    // Odd trials use a spectrum with a repeated eigenvalue so that the
    // Schatten decomposition is not unique and (iv) sees several of them.
    const DensityOperator rho = [&] {
      if (t % 2 == 0) return random_density(dim, rng);
      RealVector w(static_cast<Eigen::Index>(dim));
      for (auto& x : w) x = 0.05 + uniform01(rng);
      w(1) = w(0);
      return random_density_with_spectrum(w / w.sum(), rng);
    }();
    const Channel lambda = random_kraus_channel(dim, dim, 1 + rng() % 3, rng);

    const double c = complexity_C(rho);
    const double tr = transmitted_T(rho, lambda, search);
    dev_nonneg = std::max({dev_nonneg, -c, -tr});

    // (iv) on every sampled decomposition, (i) on each sampled value as well.
    const DensityOperator image(lambda.apply_linear(rho.matrix()));
    const auto base = spectral_decompose(rho);
    const std::size_t samples = base.degenerate ? 8 : 1;
    for (std::size_t s = 0; s < samples; ++s) {
      const auto v = evaluate_decomposition(sample_decomposition(base, seed + 7919 * t, s), lambda, image);
      dev_nonneg = std::max({dev_nonneg, -v.chaos, -v.transmitted});
      dev_bound = std::max(dev_bound, v.transmitted - c);
    }

    const Matrix u = random_unitary(dim, rng);
    const DensityOperator rotated(u * rho.matrix() * u.adjoint());
    dev_invariance = std::max(dev_invariance, std::abs(complexity_C(rotated) - c));
    report.t_relabel_drift = std::max(report.t_relabel_drift, std::abs(transmitted_T(rotated, lambda, search) - tr));

    const DensityOperator sigma = random_density(dim, rng);
    const DensityOperator joint(tensor(rho.matrix(), sigma.matrix()));
    dev_additivity = std::max(dev_additivity, std::abs(complexity_C(joint) - c - complexity_C(sigma)));

    dev_identity = std::max(dev_identity, std::abs(transmitted_T(rho, id, search) - c));
  }

  auto add = [&](std::string axiom, std::string description, double dev, double tol) {
    report.results.push_back({std::move(axiom), std::move(description), dev <= tol, std::max(0.0, dev), tol});
  };
  add("i", "C >= 0 and T >= 0", dev_nonneg, 0.0);
  add("ii", "C(U rho U*) = C(rho)", dev_invariance, 1e-10);
  add("iii", "C(rho (x) sigma) = C(rho) + C(sigma)", dev_additivity, 1e-10);
  add("iv", "T(rho; Lambda) <= C(rho) on every sampled decomposition", dev_bound, 1e-8);
  add("v", "T(rho; id) = C(rho)", dev_identity, 1e-10);
  return report;
}

}  // namespace infodyn
