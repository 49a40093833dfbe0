#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infodyn/channel.hpp"
#include "infodyn/density.hpp"

namespace infodyn {

/// Controls the decomposition search behind D and T.
struct ComplexityConfig {
  LogBase log_base = LogBase::natural;  // reporting only; all computation is in nats
  std::size_t restarts = 1000;          // decompositions tried when the spectrum is degenerate
  std::uint64_t seed = 0;               // restart r draws from Rng(seed + r)
  double degeneracy_tol = kDegeneracyTolerance;
  std::size_t threads = 1;

  void validate() const;
};

/// Complexity C(rho) = S(rho).
[[nodiscard]] double complexity_C(const DensityOperator& rho);

/// The two sums a single Schatten decomposition contributes:
/// chaos = sum_k p_k S(Lambda E_k), transmitted = sum_k p_k S(Lambda E_k || Lambda rho).
struct DecompositionValue {
  double chaos = 0.0;
  double transmitted = 0.0;
};

[[nodiscard]] DecompositionValue evaluate_decomposition(const SchattenDecomposition& decomposition,
                                                        const Channel& channel,
                                                        const DensityOperator& image);

/// Decomposition number `restart` of the search: restart 0 is the solver's
/// own eigenbasis, later restarts rotate every degenerate eigenspace by an
/// independent Haar unitary drawn from Rng(seed + restart).
[[nodiscard]] SchattenDecomposition sample_decomposition(const SchattenDecomposition& base,
                                                         std::uint64_t seed, std::size_t restart);

struct ChaosDegreeReport {
  double D = 0.0;      // upper bound on the infimum when degenerate
  double T = 0.0;      // lower bound on the supremum when degenerate
  double S_out = 0.0;  // S(Lambda rho)
  SchattenDecomposition decomposition;  // achieves D
  bool degenerate = false;
  std::size_t restarts = 1;
  std::uint64_t seed = 0;
  double best = 0.0;   // min chaos sum over restarts (= D)
  double worst = 0.0;  // max chaos sum over restarts
};

/// Transmitted complexity T: quantum mutual entropy, the supremum over Schatten
/// decompositions of sum_k p_k S(Lambda E_k || Lambda rho). Exact for non-degenerate
/// rho, a lower bound otherwise.
[[nodiscard]] double transmitted_T(const DensityOperator& rho, const Channel& channel,
                                   const ComplexityConfig& cfg = {});

/// Quantum entropic chaos degree with the decomposition search statistics.
[[nodiscard]] ChaosDegreeReport chaos_degree_quantum(const DensityOperator& rho, const Channel& channel,
                                                     const ComplexityConfig& cfg = {});

enum class DynamicsLabel { stable, weak_stable, chaotic };

[[nodiscard]] std::string to_string(DynamicsLabel label);

inline constexpr double kDefaultZeroTolerance = 1e-3;
inline constexpr double kDefaultConstTolerance = 1e-2;

/// stable if every |D| <= eps_zero; weak_stable if max - min <= eps_const and
/// the mean exceeds eps_zero; chaotic otherwise.
[[nodiscard]] DynamicsLabel classify_dynamics(std::span<const double> values,
                                              double eps_zero = kDefaultZeroTolerance,
                                              double eps_const = kDefaultConstTolerance);

/// Self-adjoint purpose operator Q on a channel's output space.
class ValueQuery {
 public:
  explicit ValueQuery(const Matrix& q);
  [[nodiscard]] const Matrix& matrix() const noexcept { return q_; }
  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(q_.rows()); }

 private:
  Matrix q_;
};

/// V = Tr[Lambda(rho_P (x) gamma_O) Q].
[[nodiscard]] double value_of_information(const DensityOperator& rho_p, const DensityOperator& gamma_o,
                                          const Channel& channel, const ValueQuery& q);

enum class Preference { first, second, tie };

[[nodiscard]] std::string to_string(Preference p);

struct Comparison {
  Preference preferred = Preference::tie;
  double first_value = 0.0;
  double second_value = 0.0;
};

inline constexpr double kValueTieTolerance = 1e-12;

/// Which signal state is more valuable for a fixed channel and purpose.
[[nodiscard]] Comparison compare_signals(const DensityOperator& rho, const DensityOperator& rho_prime,
                                         const DensityOperator& gamma_o, const Channel& channel,
                                         const ValueQuery& q);
/// Which channel is more valuable for a fixed signal and purpose.
[[nodiscard]] Comparison compare_channels(const DensityOperator& rho, const DensityOperator& gamma_o,
                                          const Channel& channel, const Channel& channel_prime,
                                          const ValueQuery& q);

/// One evaluation of the chaos-degree / value-of-information relation.
/// Informational only: nothing asserts `agree`.
struct ConjectureRow {
  double D = 0.0;
  double D_prime = 0.0;
  double V = 0.0;
  double V_prime = 0.0;
  bool agree = false;  // (D <= D') <=> (V >= V') and (D >= D') <=> (V <= V')
};

[[nodiscard]] ConjectureRow conjecture_experiment(const DensityOperator& rho, const DensityOperator& gamma_o,
                                                  const Channel& channel, const Channel& channel_prime,
                                                  const ValueQuery& q, const ComplexityConfig& cfg = {});

struct ConjectureBatch {
  std::vector<ConjectureRow> rows;
  double agreement_rate = 0.0;
};

/// `count` random instances: random states on dim_p and dim_o, two random
/// Kraus channels on the composite space and a random Hermitian Q.
[[nodiscard]] ConjectureBatch random_conjecture_batch(std::size_t count, std::size_t dim_p, std::size_t dim_o,
                                                      std::uint64_t seed, const ComplexityConfig& cfg = {});

[[nodiscard]] double agreement_rate(std::span<const ConjectureRow> rows);

struct AxiomResult {
  std::string axiom;  // "i" .. "v"
  std::string description;
  bool passed = false;
  double worst_deviation = 0.0;
  double tolerance = 0.0;
};

struct AxiomReport {
  std::size_t dim = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<AxiomResult> results;
  /// max |T(U rho U^*; Lambda) - T(rho; Lambda)| with the channel held fixed.
  /// Logged, never asserted: mutual entropy is not invariant in that setting.
  double t_relabel_drift = 0.0;

  [[nodiscard]] bool all_passed() const;
};

/// Checks axioms (i)-(v) for C = S and T = quantum mutual entropy over `trials`
/// random instances of dimension `dim` (2..8).
[[nodiscard]] AxiomReport axiom_suite(std::size_t dim, std::size_t trials, std::uint64_t seed,
                                      const ComplexityConfig& cfg = {});

}  // namespace infodyn
