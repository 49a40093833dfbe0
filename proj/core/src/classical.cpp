#include "infodyn/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infodyn/errors.hpp"
#include "infodyn/parallel.hpp"
#include "infodyn/random.hpp"

namespace infodyn {

namespace {

constexpr double kMantissaUnit = 0x1.0p-53;

std::string describe(const Point& x, std::size_t dim) {
  return dim == 1 ? std::to_string(x[0]) : "(" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ")";
}

double resolve_parameter(const MapSystem& map, const OrbitConfig& cfg) {
  const double a = cfg.parameter.value_or(map.default_parameter);
  if (!std::isfinite(a) || a < map.parameter_range.lo || a > map.parameter_range.hi) {
    throw InvalidArgument(map.name + ": parameter " + std::to_string(a) + " outside [" +
                          std::to_string(map.parameter_range.lo) + ", " + std::to_string(map.parameter_range.hi) +
                          "]");
  }
  return a;
}

}  // namespace

bool MapSystem::in_box(const Point& x) const noexcept {
  for (std::size_t i = 0; i < dimension; ++i) {
    if (!std::isfinite(x[i]) || !box[i].contains(x[i])) return false;
  }
  return true;
}

MapSystem logistic_map() {
  MapSystem m;
  m.name = "logistic";
  m.dimension = 1;
  m.box = {Interval{0.0, 1.0}, Interval{0.0, 0.0}};
  m.step = [](const Point& x, double a) { return Point{a * x[0] * (1.0 - x[0]), 0.0}; };
  m.jacobian = [](const Point& x, double a) { return Jacobian{a * (1.0 - 2.0 * x[0]), 0.0, 0.0, 0.0}; };
  m.parameter_range = {0.0, 4.0};
  m.default_parameter = 4.0;
  m.default_start = {0.3, 0.0};
  return m;
}

MapSystem baker_map() {
  MapSystem m;
  m.name = "baker";
  m.dimension = 2;
  m.box = {Interval{0.0, 1.0}, Interval{0.0, 1.0}};
  m.step = [](const Point& p, double) {
    const double twice = 2.0 * p[0];
    const double fold = std::floor(twice);
    return Point{twice - fold, (p[1] + fold) / 2.0};
  };
  m.jacobian = [](const Point&, double) { return Jacobian{2.0, 0.0, 0.0, 0.5}; };
  m.default_start = {0.3, 0.3};
  m.refill_expansion_bits = true;
  return m;
}

MapSystem tinkerbell_map(TinkerbellParams params) {
  MapSystem m;
  m.name = "tinkerbell";
  m.dimension = 2;
  m.box = {Interval{-2.0, 2.0}, Interval{-2.0, 2.0}};
  m.step = [params](const Point& p, double a) {
    const double x = p[0];
    const double y = p[1];
    return Point{x * x - y * y + a * x + params.b * y, 2.0 * x * y + params.c * x + params.d * y};
  };
  m.jacobian = [params](const Point& p, double a) {
    const double x = p[0];
    const double y = p[1];
    return Jacobian{2.0 * x + a, -2.0 * y + params.b, 2.0 * y + params.c, 2.0 * x + params.d};
  };
  m.default_parameter = params.a;
  m.default_start = {-0.72, -0.64};
  return m;
}

MapSystem constant_map(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("constant_map: value must lie in [0, 1]");
  MapSystem m;
  m.name = "constant";
  m.dimension = 1;
  m.box = {Interval{0.0, 1.0}, Interval{0.0, 0.0}};
  m.step = [c](const Point&, double) { return Point{c, 0.0}; };
  m.jacobian = [](const Point&, double) { return Jacobian{0.0, 0.0, 0.0, 0.0}; };
  m.default_start = {0.3, 0.0};
  return m;
}

MapSystem map_by_name(std::string_view name) {
  if (name == "logistic") return logistic_map();
  if (name == "baker") return baker_map();
  if (name == "tinkerbell") return tinkerbell_map();
  throw InvalidArgument("unknown map '" + std::string(name) + "' (expected logistic, baker or tinkerbell)");
}

std::vector<Point> iterate_orbit(const MapSystem& map, const OrbitConfig& cfg) {
  if (!map.step) throw InvalidArgument(map.name + ": map has no step function");
  if (cfg.samples < 1) throw InvalidArgument("iterate_orbit: samples must be at least 1");
  const double a = resolve_parameter(map, cfg);
  Point x = cfg.start.value_or(map.default_start);
  if (!map.in_box(x)) throw InvalidArgument(map.name + ": start point " + describe(x, map.dimension) + " outside box");

  Rng bits(cfg.seed);
  if (map.refill_expansion_bits) x[0] = std::floor(x[0] / kMantissaUnit) * kMantissaUnit;

  std::vector<Point> orbit;
  orbit.reserve(cfg.samples);
  const std::size_t total = cfg.transient + cfg.samples;
  for (std::size_t t = 0; t < total; ++t) {
    x = map.step(x, a);
    if (map.refill_expansion_bits) x[0] += static_cast<double>(bits() >> 63) * kMantissaUnit;
    if (!map.in_box(x)) {
      throw OrbitEscape(map.name + ": orbit left the domain box at step " + std::to_string(t + 1) + " (x = " +
                        describe(x, map.dimension) + ", parameter " + std::to_string(a) + ")");
    }
    if (t >= cfg.transient) orbit.push_back(x);
  }
  return orbit;
}

std::size_t Partition::cell_count(const MapSystem& map) const {
  return map.dimension == 1 ? bins : bins * bins;
}

std::size_t Partition::cell_of(const MapSystem& map, const Point& x) const {
  if (bins < 2) throw InvalidArgument("Partition: need at least 2 bins per axis");
  std::size_t cell = 0;
  for (std::size_t i = 0; i < map.dimension; ++i) {
    const auto& iv = map.box[i];
    const double scaled = (x[i] - iv.lo) / iv.width() * static_cast<double>(bins);
    auto idx = static_cast<std::size_t>(std::max(0.0, std::floor(scaled)));
    if (idx >= bins) idx = bins - 1;
    cell = cell * bins + idx;
  }
  return cell;
}

RealMatrix EmpiricalChannel::transition_matrix() const {
  const auto n = static_cast<Eigen::Index>(size());
  RealMatrix p = RealMatrix::Zero(n, n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, prob] : rows[i]) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = prob;
  return p;
}

double EmpiricalChannel::chaos_degree() const {
  if (transitions == 0) return 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    std::size_t from = 0;
    for (const auto& [j, c] : joint[i]) from += c;
    for (const auto& [j, c] : joint[i]) {
      d -= static_cast<double>(c) / static_cast<double>(transitions) *
           std::log(static_cast<double>(c) / static_cast<double>(from));
    }
  }
  return std::max(0.0, d);
}

EmpiricalChannel empirical_channel(std::span<const std::size_t> symbols) {
  if (symbols.size() < 2) throw InvalidArgument("empirical_channel: need at least two symbols");
  EmpiricalChannel ch;
  ch.cells.assign(symbols.begin(), symbols.end());
  std::sort(ch.cells.begin(), ch.cells.end());
  ch.cells.erase(std::unique(ch.cells.begin(), ch.cells.end()), ch.cells.end());
  auto local = [&](std::size_t cell) {
    return static_cast<std::size_t>(std::lower_bound(ch.cells.begin(), ch.cells.end(), cell) - ch.cells.begin());
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(symbols.size() - 1);
  for (std::size_t t = 0; t + 1 < symbols.size(); ++t) pairs.emplace_back(local(symbols[t]), local(symbols[t + 1]));
  std::sort(pairs.begin(), pairs.end());

  const std::size_t n = ch.cells.size();
  ch.transitions = pairs.size();
  ch.joint.resize(n);
  for (std::size_t k = 0; k < pairs.size();) {
    std::size_t run = k;
    while (run < pairs.size() && pairs[run] == pairs[k]) ++run;
    ch.joint[pairs[k].first].emplace_back(pairs[k].second, run - k);
    k = run;
  }

  ch.occupation.assign(n, 0.0);
  ch.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t from = 0;
    for (const auto& [j, c] : ch.joint[i]) from += c;
    if (from == 0) {
      ch.rows[i] = {{i, 1.0}};
      continue;
    }
    ch.occupation[i] = static_cast<double>(from) / static_cast<double>(ch.transitions);
    for (const auto& [j, c] : ch.joint[i]) {
      ch.rows[i].emplace_back(j, static_cast<double>(c) / static_cast<double>(from));
    }
  }
  return ch;
}

EmpiricalChannel empirical_channel(std::span<const Point> orbit, const MapSystem& map, const Partition& partition) {
  std::vector<std::size_t> symbols;
  symbols.reserve(orbit.size());
  for (const auto& x : orbit) symbols.push_back(partition.cell_of(map, x));
  return empirical_channel(symbols);
}

double classical_ecd(const MapSystem& map, const OrbitConfig& cfg, const Partition& partition) {
  const auto orbit = iterate_orbit(map, cfg);
  if (orbit.size() < 2) throw InvalidArgument("classical_ecd: need at least two sample points");
  return empirical_channel(orbit, map, partition).chaos_degree();
}

double lyapunov_from_orbit(const MapSystem& map, std::span<const Point> orbit, double parameter) {
  if (!map.jacobian) throw InvalidArgument(map.name + ": no analytic Jacobian available");
  if (orbit.empty()) throw InvalidArgument("lyapunov_from_orbit: empty orbit");
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  if (map.dimension == 1) {
    for (const auto& x : orbit) {
      const double d = std::abs(map.jacobian(x, parameter)[0]);
      if (d == 0.0) return neg_inf;
      sum += std::log(d);
    }
    return sum / static_cast<double>(orbit.size());
  }
  // Tangent vector carried along the orbit and renormalized every step. The
  // first few steps only align it with the expanding direction.
  const std::size_t align = std::min<std::size_t>(100, orbit.size() / 10);
  double v0 = 0.8;
  double v1 = 0.6;
  for (std::size_t t = 0; t < orbit.size(); ++t) {
    const auto j = map.jacobian(orbit[t], parameter);
    const double w0 = j[0] * v0 + j[1] * v1;
    const double w1 = j[2] * v0 + j[3] * v1;
    const double norm = std::hypot(w0, w1);
    if (norm == 0.0) return neg_inf;
    if (t >= align) sum += std::log(norm);
    v0 = w0 / norm;
    v1 = w1 / norm;
  }
  return sum / static_cast<double>(orbit.size() - align);
}

double lyapunov_exponent(const MapSystem& map, const OrbitConfig& cfg) {
  if (!map.jacobian) throw InvalidArgument(map.name + ": no analytic Jacobian available");
  return lyapunov_from_orbit(map, iterate_orbit(map, cfg), resolve_parameter(map, cfg));
}

std::size_t SweepSpec::count() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("sweep: step must be positive");
  if (!(to >= from)) throw InvalidArgument("sweep: range end precedes start");
  if (window < 1) throw InvalidArgument("sweep: window must be at least 1");
  return static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
}

std::vector<SweepRow> sweep(const MapSystem& map, const SweepSpec& spec, const OrbitConfig& cfg,
                            const Partition& partition) {
  const std::size_t n = spec.count();
  for (std::size_t i = 0; i < n; ++i) {
    OrbitConfig probe = cfg;
    probe.parameter = spec.parameter(i);
    (void)resolve_parameter(map, probe);
  }
  std::vector<SweepRow> rows(n);
  parallel_for(n, spec.threads, [&](std::size_t i) {
    OrbitConfig row_cfg = cfg;
    row_cfg.parameter = spec.parameter(i);
    const auto orbit = iterate_orbit(map, row_cfg);
    rows[i].parameter = *row_cfg.parameter;
    rows[i].D = orbit.size() < 2 ? 0.0 : empirical_channel(orbit, map, partition).chaos_degree();
    rows[i].lyapunov = map.jacobian ? lyapunov_from_orbit(map, orbit, *row_cfg.parameter)
                                    : std::numeric_limits<double>::quiet_NaN();
  });
  std::vector<double> ds;
  ds.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ds.push_back(rows[i].D);
    const std::size_t first = i + 1 >= spec.window ? i + 1 - spec.window : 0;
    rows[i].label = classify_dynamics(std::span<const double>(ds).subspan(first), spec.eps_zero, spec.eps_const);
  }
  return rows;
}

}  // namespace infodyn
