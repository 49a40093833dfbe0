#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "infodyn");
  std::ostringstream out;
  std::ostringstream err;
  const int code = infodyn::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("infodyn_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("cli usage errors") {
  CHECK(run({}).code == infodyn::cli::kExitUsage);
  CHECK(run({"nosuch"}).code == infodyn::cli::kExitUsage);
  CHECK(run({"ecd-sweep", "--map", "constantdemo"}).code == infodyn::cli::kExitUsage);
  CHECK(run({"axioms", "--dim", "1"}).code == infodyn::cli::kExitUsage);
  CHECK(run({"axioms", "--dim", "9"}).code == infodyn::cli::kExitUsage);
  CHECK(run({"--log-base", "10", "axioms"}).code == infodyn::cli::kExitUsage);
  CHECK(run({"quantum-ecd", "--state", "/nonexistent.json", "--channel", "/nonexistent.json"}).code ==
        infodyn::cli::kExitUsage);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("ecd-sweep") != std::string::npos);
}

TEST_CASE("cli ecd-sweep") {
  TempDir dir;
  const auto svg = (dir.path / "plot.svg").string();
  const auto r = run({"ecd-sweep", "--map", "logistic", "--from", "3.0", "--to", "3.1", "--step", "0.05",
                      "--samples", "2000", "--svg", svg});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "a,D,lyapunov,label");
  CHECK(rows[1].rfind("3,", 0) == 0);
  CHECK(rows[3].rfind("3.1,", 0) == 0);
  std::ifstream in(svg);
  const std::string doc((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(doc.rfind("<?xml", 0) == 0);
  CHECK(doc.find("</svg>") != std::string::npos);

  const auto bits = run({"--log-base", "2", "ecd-sweep", "--map", "logistic", "--from", "4", "--samples", "20000"});
  const auto nats = run({"ecd-sweep", "--map", "logistic", "--from", "4", "--samples", "20000"});
  const double d2 = std::stod(lines(bits.out)[1].substr(2));
  const double de = std::stod(lines(nats.out)[1].substr(2));
  CHECK(std::abs(d2 - de / std::numbers::ln2) < 1e-7);

  CHECK(run({"ecd-sweep", "--map", "tinkerbell", "--from", "1.9", "--samples", "100"}).code ==
        infodyn::cli::kExitDynamics);
  CHECK(run({"ecd-sweep", "--map", "logistic", "--from", "3.9", "--to", "4.2"}).code == infodyn::cli::kExitUsage);
  CHECK(run({"ecd-sweep", "--map", "logistic", "--from", "4", "--to", "3"}).code == infodyn::cli::kExitUsage);

  const auto out_file = (dir.path / "rows.csv").string();
  CHECK(run({"-o", out_file, "ecd-sweep", "--map", "baker", "--samples", "1000"}).code == 0);
  CHECK(fs::file_size(out_file) > 0);
}

TEST_CASE("cli quantum-ecd") {
  TempDir dir;
  const auto id2 = dir.write("id.json", R"({"kind": "unitary", "matrix": [[1, 0], [0, 1]]})");
  const auto dep3 = dir.write(
      "dep.json",
      R"({"kind": "kraus", "kraus_ops": [)"
      R"([[0.5773502691896258, 0, 0], [0, 0, 0], [0, 0, 0]], [[0, 0.5773502691896258, 0], [0, 0, 0], [0, 0, 0]],)"
      R"([[0, 0, 0.5773502691896258], [0, 0, 0], [0, 0, 0]], [[0, 0, 0], [0.5773502691896258, 0, 0], [0, 0, 0]],)"
      R"([[0, 0, 0], [0, 0.5773502691896258, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 0.5773502691896258], [0, 0, 0]],)"
      R"([[0, 0, 0], [0, 0, 0], [0.5773502691896258, 0, 0]], [[0, 0, 0], [0, 0, 0], [0, 0.5773502691896258, 0]],)"
      R"([[0, 0, 0], [0, 0, 0], [0, 0, 0.5773502691896258]]]})");
  const auto s2 = dir.write("s2.json", R"({"rho": [[0.7, [0.1, 0.1]], [[0.1, -0.1], 0.3]]})");
  const auto s3 = dir.write("s3.json", R"({"rho": [[0.2, 0, 0], [0, 0.3, 0], [0, 0, 0.5]]})");
  const auto half = dir.write("half.json", R"({"rho": [[0.5, 0], [0, 0.5]]})");

  const auto a = run({"quantum-ecd", "--state", s2, "--channel", id2});
  REQUIRE(a.code == 0);
  CHECK(std::abs(json::parse(a.out)["D"].get<double>()) <= 1e-12);

  const auto b = run({"quantum-ecd", "--state", s3, "--channel", dep3});
  REQUIRE(b.code == 0);
  CHECK(std::abs(json::parse(b.out)["D"].get<double>() - std::log(3.0)) <= 1e-9);

  const auto c = run({"--seed", "4", "quantum-ecd", "--state", half, "--channel", id2, "--restarts", "50"});
  REQUIRE(c.code == 0);
  const auto report = json::parse(c.out);
  CHECK(report["degenerate"] == true);
  CHECK(report["restarts"] == 50);
  CHECK(report["seed"] == 4);
  CHECK(report.contains("best"));
  CHECK(report.contains("worst"));

  CHECK(run({"quantum-ecd", "--state", s3, "--channel", id2}).code == infodyn::cli::kExitDimension);
  const auto broken = dir.write("broken.json", "{\"rho\": [[1, 0], [0,");
  CHECK(run({"quantum-ecd", "--state", broken, "--channel", id2}).code == infodyn::cli::kExitUsage);
  const auto extra = dir.write("extra.json", R"({"rho": [[1, 0], [0, 0]], "sigma": 1})");
  CHECK(run({"quantum-ecd", "--state", extra, "--channel", id2}).code == infodyn::cli::kExitUsage);
}

TEST_CASE("cli recognize") {
  TempDir dir;
  const auto empty = dir.write("e.json", R"({"n": 2, "rho": [[1, 0], [0, 0]], "gamma": [[0.5, 0], [0, 0.5]], "steps": 0})");
  const auto r0 = run({"recognize", empty});
  CHECK(r0.code == 0);
  CHECK(r0.out.empty());

  const auto demo = dir.write("d.json",
                              R"({"n": 2, "basis": "fourier", "rho": [[1, 0], [0, 0]], "gamma": [[0.5, 0], [0, 0.5]],)"
                              R"( "policy": "sample", "seed": 11, "steps": 6})");
  const auto r1 = run({"recognize", demo});
  const auto r2 = run({"recognize", demo});
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  const auto records = lines(r1.out);
  REQUIRE(records.size() == 6);
  const auto last = json::parse(records.back());
  CHECK(last["t"] == 5);
  CHECK(last["entropy_of_gamma"].get<double>() == 0.0);
  for (const char* key : {"t", "i", "j", "probability", "gamma", "entropy_of_gamma"}) CHECK(last.contains(key));

  const auto seq = dir.write(
      "s.json", R"({"rho": {"sequence": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}, "gamma": [[0.5, 0], [0, 0.5]],)"
                R"( "policy": "argmax"})");
  const auto r3 = run({"recognize", seq});
  REQUIRE(r3.code == 0);
  CHECK(lines(r3.out).size() == 2);

  const auto zero = dir.write("z.json", R"({"rho": [[1, 0], [0, 0]], "gamma": [[1, 0], [0, 0]],)"
                                        R"( "policy": {"fixed": [0, 1]}, "steps": 2})");
  CHECK(run({"recognize", zero}).code == infodyn::cli::kExitProbability);
  const auto mismatch = dir.write("m.json", R"({"n": 3, "rho": [[1, 0], [0, 0]], "gamma": [[1, 0], [0, 0]]})");
  CHECK(run({"recognize", mismatch}).code == infodyn::cli::kExitDimension);
  const auto unknown = dir.write("u.json", R"({"rho": [[1, 0], [0, 0]], "gamma": [[1, 0], [0, 0]], "foo": 1})");
  CHECK(run({"recognize", unknown}).code == infodyn::cli::kExitUsage);
  const auto std_basis = dir.write("b.json", R"({"rho": [[1, 0], [0, 0]], "gamma": [[0.5, 0], [0, 0.5]],)"
                                             R"( "basis": "standard", "policy": {"fixed": [1, 0]}})");
  CHECK(run({"recognize", std_basis}).code == infodyn::cli::kExitProbability);
}

TEST_CASE("cli axioms and value") {
  const auto ax = run({"axioms", "--dim", "3", "--trials", "6", "--restarts", "8"});
  REQUIRE(ax.code == 0);
  const auto report = json::parse(ax.out);
  CHECK(report["all_passed"] == true);
  CHECK(report["results"].size() == 5);

  TempDir dir;
  const std::string pair =
      R"({"rho": [[0.6, 0], [0, 0.4]], "gamma": [[1, 0], [0, 0]],)"
      R"( "channel": {"kind": "unitary", "matrix": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]},)"
      R"( "channel_prime": {"kind": "unitary", "matrix": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]},)"
      R"( "Q": [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1]]})";
  const auto same = dir.write("same.json", "{\"pairs\": [" + pair + ", " + pair + "]}");
  const auto v = run({"value", same});
  REQUIRE(v.code == 0);
  const auto out = json::parse(v.out);
  CHECK(out["agreement_rate"].get<double>() == 1.0);
  CHECK(out["rows"].size() == 2);

  const auto random = dir.write("r.json", R"({"random": {"count": 10, "dim_p": 2, "dim_o": 2}})");
  const auto vr = run({"--seed", "5", "value", random, "--restarts", "8"});
  REQUIRE(vr.code == 0);
  const double rate = json::parse(vr.out)["agreement_rate"].get<double>();
  CHECK(rate >= 0.0);
  CHECK(rate <= 1.0);
  const auto both = dir.write("both.json", R"({"random": {}, "pairs": []})");
  CHECK(run({"value", both}).code == infodyn::cli::kExitUsage);
}

TEST_CASE("cli output does not depend on the thread count") {
  const std::vector<std::string> sweep{"ecd-sweep", "--map", "logistic", "--from", "3.4", "--to", "4",
                                       "--step", "0.05", "--samples", "3000"};
  auto one = sweep;
  one.insert(one.begin(), {"--threads", "1"});
  auto four = sweep;
  four.insert(four.begin(), {"--threads", "4"});
  CHECK(run(one).out == run(four).out);

  ::setenv("INFODYN_THREADS", "3", 1);
  const auto env = run(one);
  ::setenv("INFODYN_THREADS", "zero", 1);
  const auto bad = run(one);
  ::unsetenv("INFODYN_THREADS");
  CHECK(env.out == run(one).out);
  CHECK(bad.code == infodyn::cli::kExitUsage);
}
