// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "hillcert/io.hpp"
#include "hillcert/numerics.hpp"
#include "hillcert/systems.hpp"
#include "hillcert/types.hpp"

using namespace hillcert;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Run the installed tool with a shell argument string, capturing both streams.
CliResult run_tool(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string err_path = "cli_stderr.tmp";
  std::string cmd = std::string(HILLCERT_CLI_PATH) + " " + args + " > " +
                    out_path + " 2> " + err_path;
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text_file(out_path);
  r.err = read_text_file(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

const std::set<std::string> kVerdicts = {
    "guaranteed-stable", "guaranteed-unstable", "numeric-stable",
    "numeric-unstable"};

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path(name) {}
  TempFile(const std::string& name, const std::string& content) : path(name) {
    write_text_file(path, content);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("dispatch and exit codes") {
  CHECK(run_tool("--help").code == 0);
  CHECK(run_tool("").code == 1);
  CHECK(run_tool("frobnicate").code == 1);
  CHECK(run_tool("analyze --system scalar --N 4 --bogus-flag 1").code == 1);
  // exactly one of N / E_des
  CHECK(run_tool("analyze --system scalar").code == 1);
  CHECK(run_tool("analyze --system scalar --N 4 --edes 1e-6").code == 1);
}

TEST_CASE("certificate-inapplicable envelope exits 2 naming b <= ln 2") {
  // a e^{-b|k|} with a=2, b=0.5 majorizes the scalar coefficients but decays
  // too slowly for the exponential bound.
  CliResult r = run_tool(
      "analyze --system scalar --beta 0.01 --gamma 0.8 --N 10 "
      "--env-a 2.0 --env-b 0.5");
  CHECK(r.code == 2);
  CHECK(r.err.find("ln 2") != std::string::npos);
}

TEST_CASE("xi table: p=[0] gives Re xi = t = bound, and runs are byte-stable") {
  CliResult r1 = run_tool("xi --tuple 0 --omega 1.0 --samples 5 --t-max 2.0");
  REQUIRE(r1.code == 0);
  auto lines = split_lines(r1.out);
  REQUIRE(lines.size() == 6);  // header + 5 samples
  CHECK(lines[0] == "t,xi_re,xi_im,bound");
  for (size_t i = 1; i < lines.size(); ++i) {
    auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 4);
    CHECK(cells[1] == cells[0]);  // Re xi == t, byte-identical formatting
    CHECK(cells[3] == cells[0]);  // bound t^1/1! == t
    CHECK(std::strtod(cells[2].c_str(), nullptr) == doctest::Approx(0.0));
  }
  CliResult r2 = run_tool("xi --tuple 0 --omega 1.0 --samples 5 --t-max 2.0");
  CHECK(r2.out == r1.out);  // determinism

  // Oscillatory triple: finite values below the polynomial bound.
  CliResult r3 =
      run_tool("xi --tuple [-1,-2,3] --omega 2.0 --samples 9 --t-max 3.0");
  REQUIRE(r3.code == 0);
  auto lines3 = split_lines(r3.out);
  REQUIRE(lines3.size() == 10);
  for (size_t i = 2; i < lines3.size(); ++i) {  // skip t=0 row
    auto cells = split_csv(lines3[i]);
    double re = std::strtod(cells[1].c_str(), nullptr);
    double im = std::strtod(cells[2].c_str(), nullptr);
    double bound = std::strtod(cells[3].c_str(), nullptr);
    CHECK(std::hypot(re, im) <= bound * (1.0 + 1e-12));
  }
  CHECK(run_tool("xi --omega 1.0").code == 1);  // tuple required
}

TEST_CASE("analyze: scalar certificate report") {
  const std::string args =
      "analyze --system scalar --beta 0.01 --gamma 0.8 --N 120 "
      "--formulation direct";
  CliResult r = run_tool(args);
  REQUIRE(r.code == 0);
  json report = json::parse(r.out);
  CHECK(report["system"] == "scalar");
  CHECK(report["formulation"] == "direct");
  CHECK(report["N"] == 120);
  double bound = report["bound"].get<double>();
  CHECK(bound > 0.0);
  CHECK(bound < 1e-3);
  double a = report["envelope"]["a"].get<double>();
  double b = report["envelope"]["b"].get<double>();
  CHECK(a > 0.0);
  CHECK(b > std::log(2.0));
  REQUIRE(report["multipliers"].size() == 1);
  double re = report["multipliers"][0]["re"].get<double>();
  double im = report["multipliers"][0]["im"].get<double>();
  // Closed-form monodromy of x' = (beta + 2 gamma cos t) x.
  double exact = scalar_system_phi(0.01, 0.8, 1.0, 2.0 * pi);
  CHECK(std::abs(Complex(re, im) - Complex(exact, 0.0)) <= bound + 1e-9);
  CHECK(report["verdict"] == "guaranteed-unstable");  // multiplier ~ e^0.02pi

  CliResult r2 = run_tool(args);
  CHECK(r2.out == r.out);  // byte-identical report
}

TEST_CASE("analyze: series file round-trip reproduces the matrix exponential") {
  FourierMatrixSeries constant;
  constant.omega = 1.0;
  constant.dim = 2;
  constant.real_series = true;
  ComplexMatrix J0(2, 2);
  J0 << Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(-1.0, 0.0),
      Complex(-1.0, 0.0);
  constant.set(0, J0);
  TempFile file("roundtrip_series.json", write_series_json(constant));

  CliResult r = run_tool("analyze --series-file " + file.path +
                         " --N 3 --formulation direct");
  REQUIRE(r.code == 0);
  json report = json::parse(r.out);
  const double T = 2.0 * pi;
  ComplexVector expected = eigenvalues(mat_exp(J0 * T));
  REQUIRE(report["multipliers"].size() == 2);
  for (int i = 0; i < 2; ++i) {
    Complex got(report["multipliers"][i]["re"].get<double>(),
                report["multipliers"][i]["im"].get<double>());
    CHECK(std::abs(got - expected(i)) < 1e-9);
  }
  // Constant series: truncation error is identically zero; the verdict is a
  // certificate (spectral radius e^{-2pi} << 1).
  CHECK(report["verdict"] == "guaranteed-stable");
}

TEST_CASE("sweep: single cell agrees with analyze, parallel runs are stable") {
  const std::string grid =
      "sweep --delta-min 1.0 --delta-max 1.0 --delta-count 1 "
      "--eps-min 0.1 --eps-max 0.1 --eps-count 1 --N 6";
  CliResult sweep = run_tool(grid);
  REQUIRE(sweep.code == 0);
  auto lines = split_lines(sweep.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "delta,epsilon,max_multiplier,verdict");
  auto cells = split_csv(lines[1]);
  REQUIRE(cells.size() == 4);
  CHECK(kVerdicts.count(cells[3]) == 1);

  CliResult analyze =
      run_tool("analyze --system mathieu --delta 1.0 --eps 0.1 --N 6");
  REQUIRE(analyze.code == 0);
  json report = json::parse(analyze.out);
  double sweep_modulus = std::strtod(cells[2].c_str(), nullptr);
  double re = report["multipliers"][0]["re"].get<double>();
  double im = report["multipliers"][0]["im"].get<double>();
  CHECK(sweep_modulus == doctest::Approx(std::hypot(re, im)).epsilon(1e-12));
  CHECK(report["verdict"] == cells[3]);

  // A 3x2 grid computed with 1 and 2 workers must be byte-identical.
  const std::string grid32 =
      "sweep --delta-min 0.0 --delta-max 2.0 --delta-count 3 "
      "--eps-min 0.0 --eps-max 0.5 --eps-count 2 --N 4";
  ::setenv("HILLCERT_THREADS", "1", 1);
  CliResult serial = run_tool(grid32);
  ::setenv("HILLCERT_THREADS", "2", 1);
  CliResult parallel = run_tool(grid32);
  ::unsetenv("HILLCERT_THREADS");
  REQUIRE(serial.code == 0);
  REQUIRE(parallel.code == 0);
  CHECK(serial.out == parallel.out);
  CHECK(split_lines(serial.out).size() == 7);  // header + 6 points
}

TEST_CASE("validate: table is sound and the footers match the columns") {
  CliResult r = run_tool(
      "validate --system scalar --beta 0.01 --gamma 0.8 --n-max 8 "
      "--edes 0.5 --t 1.0 --formulation direct");
  REQUIRE(r.code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 1 + 8 + 2);
  CHECK(lines[0] == "N,actual_error,bound");
  int first_below = -1;
  for (int N = 1; N <= 8; ++N) {
    auto cells = split_csv(lines[N]);
    REQUIRE(cells.size() == 3);
    CHECK(std::stoi(cells[0]) == N);
    double actual = std::strtod(cells[1].c_str(), nullptr);
    double bound = std::strtod(cells[2].c_str(), nullptr);
    CHECK(actual <= bound);  // soundness row by row (bound may be inf)
    if (first_below < 0 && actual < 0.5) first_below = N;
  }
  CHECK(lines[9] == "# N_num," + std::to_string(first_below));
  CHECK(lines[10].rfind("# N_star,", 0) == 0);
  int n_star = std::stoi(lines[10].substr(9));
  CHECK(n_star >= 1);  // certified order exists for the valid scalar envelope

  CHECK(run_tool("validate --system scalar --N 4").code == 1);
  CHECK(run_tool("validate --system scalar --formulation reference").code == 1);
}

TEST_CASE("duffing: solve, export, and re-import for analysis") {
  TempFile sol_file("duffing_sol.json");
  CliResult solve = run_tool("duffing --system duffing1 --n-h 8 --out " +
                             sol_file.path);
  REQUIRE(solve.code == 0);
  json sol = json::parse(read_text_file(sol_file.path));
  CHECK(sol["N_h"] == 8);
  CHECK(sol["params"]["alpha"].get<double>() == doctest::Approx(5.0));
  CHECK(sol["residual_norm"].get<double>() < 1e-12);
  CHECK(sol["coeffs"].size() == 17);

  CliResult analyze =
      run_tool("analyze --solution-file " + sol_file.path + " --N 6");
  REQUIRE(analyze.code == 0);
  json report = json::parse(analyze.out);
  CHECK(report["system"] == "duffing-solution");
  CHECK(report["envelope"]["b"].get<double>() > std::log(2.0));
  CHECK(std::isfinite(report["bound"].get<double>()));
  CHECK(kVerdicts.count(report["verdict"].get<std::string>()) == 1);
}
