#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infodyn/hilbert.hpp"
#include "infodyn/metrics.hpp"

namespace infodyn {

/// A phase-space point; maps of dimension 1 use only the first coordinate.
using Point = std::array<double, 2>;
/// Row-major 2x2 Jacobian; 1-D maps use only entry 0.
using Jacobian = std::array<double, 4>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  [[nodiscard]] bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  [[nodiscard]] double width() const noexcept { return hi - lo; }
};

/// An iterated map x -> f_a(x) on a box, with an optional analytic Jacobian.
struct MapSystem {
  std::string name;
  std::size_t dimension = 1;
  std::array<Interval, 2> box{};
  std::function<Point(const Point&, double)> step;
  std::function<Jacobian(const Point&, double)> jacobian;
  Interval parameter_range{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  double default_parameter = 0.0;
  Point default_start{0.0, 0.0};
  /// Doubling maps exhaust a binary mantissa in ~53 steps. When set, the
  /// first coordinate is kept on the 2^-53 grid and the bit vacated by each
  /// doubling is filled from the orbit's seeded generator, which continues
  /// the binary expansion of the starting point rather than perturbing it.
  bool refill_expansion_bits = false;

  [[nodiscard]] bool in_box(const Point& x) const noexcept;
};

/// f_a(x) = a x (1 - x) on [0, 1], a in [0, 4].
[[nodiscard]] MapSystem logistic_map();
/// (x, y) -> (2x mod 1, (y + floor(2x)) / 2) on the unit square; no parameter.
[[nodiscard]] MapSystem baker_map();

struct TinkerbellParams {
  double a = 0.9;
  double b = -0.6013;
  double c = 2.0;
  double d = 0.5;
};
/// (x, y) -> (x^2 - y^2 + a x + b y, 2 x y + c x + d y) on [-2, 2]^2. The
/// swept parameter replaces `a`.
[[nodiscard]] MapSystem tinkerbell_map(TinkerbellParams params = {});
/// f(x) = c on [0, 1]; zero derivative everywhere.
[[nodiscard]] MapSystem constant_map(double c);

/// Looks up logistic, baker or tinkerbell. Throws InvalidArgument otherwise.
[[nodiscard]] MapSystem map_by_name(std::string_view name);

struct OrbitConfig {
  std::optional<Point> start;      // map default when empty
  std::optional<double> parameter; // map default when empty
  std::size_t transient = 1000;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;          // only used by maps that refill expansion bits
};

/// Post-transient orbit of `samples` points. Throws OrbitEscape when a point
/// leaves the box or becomes non-finite, InvalidArgument for a bad start or
/// parameter.
[[nodiscard]] std::vector<Point> iterate_orbit(const MapSystem& map, const OrbitConfig& cfg);

/// Equal-width cells, `bins` per axis. Cells are half-open [lo, hi) except
/// the last one along each axis, which is closed.
struct Partition {
  std::size_t bins = 100;

  [[nodiscard]] std::size_t cell_count(const MapSystem& map) const;
  [[nodiscard]] std::size_t cell_of(const MapSystem& map, const Point& x) const;
};

/// One-step transition statistics of a symbol sequence.
struct EmpiricalChannel {
  std::vector<std::size_t> cells;  // visited cell ids, ascending
  std::vector<double> occupation;  // p_i, frequency of cell i as a transition source
  /// rows[i] = (local target index, p(j|i)); cells that only appear as the
  /// final symbol get a self-transition and p_i = 0.
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  /// joint[i] = (local target index, count(i -> j)).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> joint;
  std::size_t transitions = 0;

  [[nodiscard]] std::size_t size() const noexcept { return cells.size(); }
  /// Dense row-stochastic matrix over the visited cells.
  [[nodiscard]] RealMatrix transition_matrix() const;
  /// sum_i p_i H(p(.|i)), the classical entropic chaos degree.
  [[nodiscard]] double chaos_degree() const;
};

[[nodiscard]] EmpiricalChannel empirical_channel(std::span<const std::size_t> symbols);
[[nodiscard]] EmpiricalChannel empirical_channel(std::span<const Point> orbit, const MapSystem& map,
                                                 const Partition& partition);

[[nodiscard]] double classical_ecd(const MapSystem& map, const OrbitConfig& cfg, const Partition& partition);

/// Largest Lyapunov exponent along a given orbit; -infinity when the tangent
/// dynamics collapse (a zero derivative on the orbit).
[[nodiscard]] double lyapunov_from_orbit(const MapSystem& map, std::span<const Point> orbit, double parameter);
[[nodiscard]] double lyapunov_exponent(const MapSystem& map, const OrbitConfig& cfg);

struct SweepRow {
  double parameter = 0.0;
  double D = 0.0;
  double lyapunov = 0.0;  // NaN when the map has no Jacobian
  DynamicsLabel label = DynamicsLabel::stable;
};

struct SweepSpec {
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  std::size_t window = 5;  // trailing rows fed to classify_dynamics
  double eps_zero = kDefaultZeroTolerance;
  double eps_const = kDefaultConstTolerance;
  std::size_t threads = 1;

  [[nodiscard]] std::size_t count() const;
  [[nodiscard]] double parameter(std::size_t i) const noexcept { return std::min(to, from + static_cast<double>(i) * step); }
};

/// One row per parameter from..to (inclusive) in ascending order. Rows are
/// computed independently and may run in parallel; output does not depend on
/// the thread count.
[[nodiscard]] std::vector<SweepRow> sweep(const MapSystem& map, const SweepSpec& spec, const OrbitConfig& cfg,
                                          const Partition& partition);

}  // namespace infodyn
