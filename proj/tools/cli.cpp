#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "infodyn/classical.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/json_io.hpp"
#include "infodyn/metrics.hpp"
#include "infodyn/recognition.hpp"
#include "svg.hpp"

namespace infodyn::cli {

namespace {

using json = nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  std::string log_base = "e";
  std::string output;
  std::size_t threads = 1;
};

LogBase parse_base(const std::string& s) { return s == "2" ? LogBase::two : LogBase::natural; }

// INFODYN_THREADS wins over --threads.
std::size_t resolve_threads(std::size_t flag) {
  const char* env = std::getenv("INFODYN_THREADS");
  if (env == nullptr || *env == '\0') return flag;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0 || v > 1024) throw InvalidArgument("INFODYN_THREADS must be an integer in [1, 1024]");
  return static_cast<std::size_t>(v);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::uint64_t read_u64(const json& j, std::string_view what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw InvalidArgument(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

// --- ecd-sweep ---------------------------------------------------------------

struct SweepFlags {
  std::string map;
  std::optional<double> from;
  std::optional<double> to;
  double step = 0.005;
  std::size_t bins = 100;
  std::size_t transient = 1000;
  std::size_t samples = 100000;
  std::optional<double> x0;
  std::optional<double> y0;
  std::size_t window = 5;
  double eps_zero = kDefaultZeroTolerance;
  double eps_const = kDefaultConstTolerance;
  std::string svg;
};

std::string cmd_ecd_sweep(const SweepFlags& f, const Globals& g, std::size_t threads) {
  const MapSystem map = map_by_name(f.map);
  const LogBase base = parse_base(g.log_base);

  OrbitConfig cfg;
  cfg.transient = f.transient;
  cfg.samples = f.samples;
  cfg.seed = g.seed;
  if (f.x0 || f.y0) {
    Point start = map.default_start;
    if (f.x0) start[0] = *f.x0;
    if (f.y0) start[1] = *f.y0;
    cfg.start = start;
  }

  SweepSpec spec;
  spec.from = f.from.value_or(map.default_parameter);
  spec.to = f.to.value_or(f.from.value_or(map.default_parameter));
  spec.step = f.step;
  spec.window = f.window;
  spec.eps_zero = f.eps_zero;
  spec.eps_const = f.eps_const;
  spec.threads = threads;

  const auto rows = sweep(map, spec, cfg, Partition{f.bins});

  std::string csv = "a,D,lyapunov,label\n";
  std::vector<double> xs, ds, ls;
  for (const auto& r : rows) {
    const double d = in_base(r.D, base);
    const double l = std::isnan(r.lyapunov) ? r.lyapunov : in_base(r.lyapunov, base);
    csv += fmt9(r.parameter) + ',' + fmt9(d) + ',' + fmt9(l) + ',' + to_string(r.label) + '\n';
    xs.push_back(r.parameter);
    ds.push_back(d);
    ls.push_back(l);
  }
  if (!f.svg.empty()) {
    std::ofstream svg(f.svg, std::ios::binary);
    if (!svg) throw InvalidArgument("cannot write '" + f.svg + "'");
    svg << line_plot(map.name + ": chaos degree and Lyapunov exponent", "parameter", xs,
                     {{"D", "#1f77b4", ds}, {"lyapunov", "#d62728", ls}});
  }
  return csv;
}

// --- quantum-ecd -------------------------------------------------------------

std::string cmd_quantum_ecd(const std::string& state_path, const std::string& channel_path, std::size_t restarts,
                            const Globals& g, std::size_t threads) {
  const json state = read_json_file(state_path);
  json_io::require_keys(state, {"rho"}, "state file");
  const DensityOperator rho = json_io::density_from_json(json_io::member(state, "rho", "state file"));
  const Channel channel = json_io::channel_from_json(read_json_file(channel_path));

  ComplexityConfig cfg;
  cfg.log_base = parse_base(g.log_base);
  cfg.restarts = restarts;
  cfg.seed = g.seed;
  cfg.threads = threads;
  const auto report = chaos_degree_quantum(rho, channel, cfg);
  json out = json_io::report_to_json(report, cfg.log_base);
  out["n"] = rho.dim();
  out["channel"] = to_string(channel.kind());
  return out.dump() + '\n';
}

// --- recognize ---------------------------------------------------------------

SignalBasis basis_from_json(const json& j, std::size_t n) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "fourier") return SignalBasis::fourier(n);
    if (s == "standard") return SignalBasis::standard(n);
    throw InvalidArgument("experiment: unknown basis '" + s + "'");
  }
  if (j.is_object()) {
    json_io::require_keys(j, {"custom"}, "basis");
    const Matrix b = json_io::matrix_from_json(json_io::member(j, "custom", "basis"));
    if (static_cast<std::size_t>(b.rows()) != n || static_cast<std::size_t>(b.cols()) != n) {
      throw DimensionMismatch("experiment: custom basis must be n x n");
    }
    return SignalBasis::custom(b);
  }
  throw InvalidArgument("experiment: 'basis' must be \"fourier\", \"standard\" or {\"custom\": matrix}");
}

RecognitionPolicy policy_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "sample") return RecognitionPolicy::sample();
    if (s == "argmax") return RecognitionPolicy::argmax();
    throw InvalidArgument("experiment: unknown policy '" + s + "'");
  }
  if (j.is_object()) {
    json_io::require_keys(j, {"fixed"}, "policy");
    const auto& ij = json_io::member(j, "fixed", "policy");
    if (!ij.is_array() || ij.size() != 2) throw InvalidArgument("policy: 'fixed' must be [i, j]");
    return RecognitionPolicy::fixed(read_u64(ij[0], "policy i"), read_u64(ij[1], "policy j"));
  }
  throw InvalidArgument("experiment: 'policy' must be \"sample\", \"argmax\" or {\"fixed\": [i, j]}");
}

std::string cmd_recognize(const std::string& path, const Globals& g) {
  const json exp = read_json_file(path);
  constexpr std::string_view what = "experiment";
  json_io::require_keys(exp, {"n", "basis", "rho", "gamma", "policy", "seed", "steps"}, what);

  const DensityOperator gamma = json_io::density_from_json(json_io::member(exp, "gamma", what));
  const std::size_t n = exp.contains("n") ? read_u64(exp["n"], "n") : gamma.dim();
  if (gamma.dim() != n) throw DimensionMismatch("experiment: gamma is not n x n");

  // rho is a matrix (repeated every step) or {"sequence": [matrix, ...]}.
  std::vector<DensityOperator> signals;
  const json& rho = json_io::member(exp, "rho", what);
  bool repeated = false;
  if (rho.is_object()) {
    json_io::require_keys(rho, {"sequence"}, "rho");
    const auto& seq = json_io::member(rho, "sequence", "rho");
    if (!seq.is_array()) throw InvalidArgument("rho: 'sequence' must be an array of matrices");
    for (const auto& m : seq) signals.push_back(json_io::density_from_json(m));
  } else {
    signals.push_back(json_io::density_from_json(rho));
    repeated = true;
  }
  for (const auto& s : signals) {
    if (s.dim() != n) throw DimensionMismatch("experiment: rho is not n x n");
  }
  const std::size_t steps = exp.contains("steps") ? read_u64(exp["steps"], "steps") : (repeated ? 1 : signals.size());
  if (repeated) {
    signals.assign(steps, signals.front());
  } else if (steps > signals.size()) {
    throw InvalidArgument("experiment: steps exceeds the length of the rho sequence");
  } else {
    signals.resize(steps, signals.front());
  }

  const BellSystem bell(basis_from_json(exp.contains("basis") ? exp["basis"] : json("fourier"), n));
  const RecognitionPolicy policy = exp.contains("policy") ? policy_from_json(exp["policy"]) : RecognitionPolicy::sample();
  const std::uint64_t seed = exp.contains("seed") ? read_u64(exp["seed"], "seed") : g.seed;
  const LogBase base = parse_base(g.log_base);

  const auto state = recognize_sequence(gamma, signals, bell, policy, seed);
  std::string lines;
  for (const auto& step : state.history) {
    const json rec{{"t", step.t},
                   {"i", step.i},
                   {"j", step.j},
                   {"probability", step.probability},
                   {"gamma", json_io::to_json(step.gamma.matrix())},
                   {"entropy_of_gamma", in_base(step.entropy_of_gamma, base)}};
    lines += rec.dump() + '\n';
  }
  return lines;
}

// --- axioms ------------------------------------------------------------------

std::string cmd_axioms(std::size_t dim, std::size_t trials, std::size_t restarts, const Globals& g,
                       std::size_t threads, bool& all_passed) {
  ComplexityConfig cfg;
  cfg.restarts = restarts;
  cfg.threads = threads;
  const auto report = axiom_suite(dim, trials, g.seed, cfg);
  json results = json::array();
  for (const auto& r : report.results) {
    results.push_back({{"axiom", r.axiom},
                       {"description", r.description},
                       {"passed", r.passed},
                       {"worst_deviation", r.worst_deviation},
                       {"tolerance", r.tolerance}});
  }
  all_passed = report.all_passed();
  const json out{{"dim", report.dim},
                 {"trials", report.trials},
                 {"seed", report.seed},
                 {"results", std::move(results)},
                 {"t_relabel_drift", report.t_relabel_drift},
                 {"all_passed", all_passed}};
  return out.dump(2) + '\n';
}

// --- value -------------------------------------------------------------------

json row_to_json(const ConjectureRow& r, LogBase base) {
  return {{"D", in_base(r.D, base)},
          {"D_prime", in_base(r.D_prime, base)},
          {"V", r.V},
          {"V_prime", r.V_prime},
          {"agree", r.agree}};
}

std::string cmd_value(const std::string& path, std::size_t restarts, const Globals& g, std::size_t threads) {
  const json batch = read_json_file(path);
  constexpr std::string_view what = "value batch";
  json_io::require_keys(batch, {"pairs", "random", "seed"}, what);
  if (batch.contains("pairs") == batch.contains("random")) {
    throw InvalidArgument("value batch: give exactly one of 'pairs' or 'random'");
  }
  ComplexityConfig cfg;
  cfg.restarts = restarts;
  cfg.threads = threads;
  cfg.seed = batch.contains("seed") ? read_u64(batch["seed"], "seed") : g.seed;
  const LogBase base = parse_base(g.log_base);

  std::vector<ConjectureRow> rows;
  if (batch.contains("pairs")) {
    const auto& pairs = batch["pairs"];
    if (!pairs.is_array()) throw InvalidArgument("value batch: 'pairs' must be an array");
    for (const auto& p : pairs) {
      constexpr std::string_view pw = "value pair";
      json_io::require_keys(p, {"rho", "gamma", "channel", "channel_prime", "Q"}, pw);
      const auto rho = json_io::density_from_json(json_io::member(p, "rho", pw));
      const auto gamma = json_io::density_from_json(json_io::member(p, "gamma", pw));
      const auto ch = json_io::channel_from_json(json_io::member(p, "channel", pw));
      const auto ch_prime = json_io::channel_from_json(json_io::member(p, "channel_prime", pw));
      const ValueQuery q(json_io::matrix_from_json(json_io::member(p, "Q", pw)));
      rows.push_back(conjecture_experiment(rho, gamma, ch, ch_prime, q, cfg));
    }
  } else {
    const auto& r = batch["random"];
    json_io::require_keys(r, {"count", "dim_p", "dim_o"}, "random");
    const std::size_t count = r.contains("count") ? read_u64(r["count"], "count") : 100;
    const std::size_t dim_p = r.contains("dim_p") ? read_u64(r["dim_p"], "dim_p") : 2;
    const std::size_t dim_o = r.contains("dim_o") ? read_u64(r["dim_o"], "dim_o") : 2;
    rows = random_conjecture_batch(count, dim_p, dim_o, cfg.seed, cfg).rows;
  }
  json out_rows = json::array();
  for (const auto& r : rows) out_rows.push_back(row_to_json(r, base));
  const json out{{"count", rows.size()}, {"rows", std::move(out_rows)}, {"agreement_rate", agreement_rate(rows)}};
  return out.dump(2) + '\n';
}

void emit(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write '" + g.output + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"infodyn: information dynamics workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice (default 0)");
  app.add_option("--log-base", g.log_base, "Logarithm base for reported entropies")
      ->check(CLI::IsMember({"e", "2"}));
  app.add_option("-o,--output", g.output, "Write results to this file instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads (INFODYN_THREADS overrides)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("ecd-sweep", "Classical chaos degree and Lyapunov exponent over a parameter range");
  sweep_cmd->add_option("--map", sweep_flags.map, "logistic, baker or tinkerbell")->required();
  sweep_cmd->add_option("--from", sweep_flags.from, "First parameter value");
  sweep_cmd->add_option("--to", sweep_flags.to, "Last parameter value (inclusive)");
  sweep_cmd->add_option("--step", sweep_flags.step, "Parameter step")->capture_default_str();
  sweep_cmd->add_option("--bins", sweep_flags.bins, "Cells per axis")->capture_default_str();
  sweep_cmd->add_option("--transient", sweep_flags.transient, "Discarded iterations")->capture_default_str();
  sweep_cmd->add_option("--samples", sweep_flags.samples, "Recorded iterations")->capture_default_str();
  sweep_cmd->add_option("--x0", sweep_flags.x0, "Initial x");
  sweep_cmd->add_option("--y0", sweep_flags.y0, "Initial y (2-D maps)");
  sweep_cmd->add_option("--window", sweep_flags.window, "Rows per classification window")->capture_default_str();
  sweep_cmd->add_option("--eps-zero", sweep_flags.eps_zero, "Stable threshold")->capture_default_str();
  sweep_cmd->add_option("--eps-const", sweep_flags.eps_const, "Weak-stable spread threshold")->capture_default_str();
  sweep_cmd->add_option("--svg", sweep_flags.svg, "Also write an SVG plot to this path");

  std::string state_path;
  std::string channel_path;
  std::size_t qe_restarts = 1000;
  auto* qe_cmd = app.add_subcommand("quantum-ecd", "Quantum chaos degree and transmitted complexity of a state and channel");
  qe_cmd->add_option("--state", state_path, "JSON file {\"rho\": matrix}")->required();
  qe_cmd->add_option("--channel", channel_path, "JSON channel descriptor")->required();
  qe_cmd->add_option("--restarts", qe_restarts, "Decompositions tried for degenerate spectra")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string experiment_path;
  auto* rec_cmd = app.add_subcommand("recognize", "Run a recognition experiment and print its history as JSON lines");
  rec_cmd->add_option("experiment", experiment_path, "Experiment JSON file")->required();

  std::size_t dim = 2;
  std::size_t trials = 100;
  std::size_t ax_restarts = 32;
  auto* ax_cmd = app.add_subcommand("axioms", "Check the complexity axioms on random instances");
  ax_cmd->add_option("--dim", dim, "Hilbert space dimension (2..8)")->capture_default_str()->check(CLI::Range(2, 8));
  ax_cmd->add_option("--trials", trials, "Random instances")->capture_default_str()->check(CLI::PositiveNumber);
  ax_cmd->add_option("--restarts", ax_restarts, "Decompositions sampled per degenerate state")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string batch_path;
  std::size_t value_restarts = 1000;
  auto* value_cmd = app.add_subcommand("value", "Chaos degree versus value of information over a batch of channel pairs");
  value_cmd->add_option("batch", batch_path, "Batch JSON file")->required();
  value_cmd->add_option("--restarts", value_restarts, "Decompositions tried for degenerate spectra")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "infodyn: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const std::size_t threads = resolve_threads(g.threads);
    if (sweep_cmd->parsed()) {
      emit(cmd_ecd_sweep(sweep_flags, g, threads), g, out);
    } else if (qe_cmd->parsed()) {
      emit(cmd_quantum_ecd(state_path, channel_path, qe_restarts, g, threads), g, out);
    } else if (rec_cmd->parsed()) {
      emit(cmd_recognize(experiment_path, g), g, out);
    } else if (ax_cmd->parsed()) {
      bool passed = false;
      emit(cmd_axioms(dim, trials, ax_restarts, g, threads, passed), g, out);
      return passed ? kExitOk : kExitFailure;
    } else if (value_cmd->parsed()) {
      emit(cmd_value(batch_path, value_restarts, g, threads), g, out);
    }
    return kExitOk;
  } catch (const OrbitEscape& e) {
    err << "infodyn: " << e.what() << '\n';
    return kExitDynamics;
  } catch (const DimensionMismatch& e) {
    err << "infodyn: " << e.what() << '\n';
    return kExitDimension;
  } catch (const OutsideDomain& e) {
    err << "infodyn: " << e.what() << '\n';
    return kExitProbability;
  } catch (const InvalidArgument& e) {
    err << "infodyn: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "infodyn: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "infodyn: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace infodyn::cli
