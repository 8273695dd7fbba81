#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzpval/cli.hpp"

using namespace fuzzpval;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run curve(const cli::CurveOptions& o) {
  std::ostringstream out, err;
  const int code = cli::run_curve(o, out, err);
  return {code, out.str(), err.str()};
}

Run pvalue(const cli::PValueOptions& o) {
  std::ostringstream out, err;
  const int code = cli::run_pvalue(o, out, err);
  return {code, out.str(), err.str()};
}

Run ci(const cli::CiOptions& o) {
  std::ostringstream out, err;
  const int code = cli::run_ci(o, out, err);
  return {code, out.str(), err.str()};
}

Run verify(const cli::VerifyOptions& o) {
  std::ostringstream out, err;
  const int code = cli::run_verify(o, out, err);
  return {code, out.str(), err.str()};
}

CsvTable csv_of(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

std::size_t nearest(const std::vector<double>& grid, double x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(grid[i] - x) < std::abs(grid[best] - x)) best = i;
  }
  return best;
}

fs::path temp_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() /
                       ("fuzzpval-tests-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run exec_cli(const std::string& args, const std::string& tag) {
  const fs::path out = temp_dir() / (tag + ".out");
  const fs::path err = temp_dir() / (tag + ".err");
  const std::string cmd = std::string(FUZZPVAL_CLI_BIN) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  const int code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  return {code, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("demo curves go to stdout as csv", "[cli]") {
  cli::CurveOptions o;
  o.demo_fuzzy = true;
  const Run r = curve(o);
  REQUIRE(r.code == 0);
  REQUIRE(r.err.empty());

  const CsvTable t = csv_of(r.out);
  REQUIRE(t.headers == std::vector<std::string>{"u", "mu_a", "mu_b"});
  REQUIRE(t.columns[0].size() == 601);
  REQUIRE(t.columns[0][300] == 10.0);
  REQUIRE(t.columns[1][300] == 1.0);
  REQUIRE(t.columns[2][300] == 1.0);
  REQUIRE(t.columns[0][150] == 8.5);  // B(8.5)=0.25 strictly above A(8.5)=0
  REQUIRE(t.columns[1][150] == 0.0);
  REQUIRE(t.columns[2][150] == 0.25);
}

TEST_CASE("curve csv peaks at the observed difference", "[cli]") {
  cli::CurveOptions o;
  o.theta_lo = -0.9;
  o.theta_hi = 0.9;
  o.grid = 37;
  o.sup.omega_grid = 301;
  o.workers = 2;
  const Run r = curve(o);
  REQUIRE(r.code == 0);

  const CsvTable t = csv_of(r.out);
  REQUIRE(t.headers == std::vector<std::string>{"theta", "mu"});
  REQUIRE(t.columns[0].size() == 37);
  for (double v : t.columns[1]) {
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
  }
  const std::size_t peak = nearest(t.columns[0], 0.45);
  REQUIRE_THAT(t.columns[1][peak], Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("berger-boos adds a bounded third column", "[cli]") {
  cli::CurveOptions o;
  o.theta_lo = -0.6;
  o.theta_hi = 0.8;
  o.grid = 21;
  o.sup.omega_grid = 301;
  o.berger_boos = true;
  o.gamma = 0.05;
  o.workers = 2;
  const Run r = curve(o);
  REQUIRE(r.code == 0);

  const CsvTable t = csv_of(r.out);
  REQUIRE(t.headers == std::vector<std::string>{"theta", "mu", "mu_bb"});
  for (std::size_t i = 0; i < t.columns[0].size(); ++i) {
    const double mu = t.columns[1][i];
    const double bb = t.columns[2][i];
    REQUIRE(bb >= o.gamma);
    REQUIRE(bb <= std::min(1.0, mu + o.gamma) + 1e-9);
  }
}

TEST_CASE("curve writes files and keeps stdout quiet", "[cli]") {
  const fs::path dir = temp_dir();
  cli::CurveOptions o;
  o.theta_lo = -0.5;
  o.theta_hi = 0.5;
  o.grid = 11;
  o.sup.omega_grid = 201;
  o.workers = 1;
  o.csv_path = (dir / "curve.csv").string();
  o.json_path = (dir / "curve.json").string();
  o.svg_path = (dir / "curve.svg").string();
  o.alpha_line = 0.05;
  o.band = "0:0.2";
  const Run r = curve(o);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.empty());

  const CsvTable t = csv_of(slurp(o.csv_path));
  REQUIRE(t.columns[0].size() == 11);

  const auto j = nlohmann::json::parse(slurp(o.json_path));
  REQUIRE(j.at("schema_version").get<int>() == 1);
  REQUIRE(j.at("grid").size() == 11);

  const std::string svg = slurp(o.svg_path);
  REQUIRE(svg.rfind("<svg", 0) == 0);
  REQUIRE(svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("usage problems exit 1 before any computation", "[cli]") {
  {
    cli::CurveOptions o;
    o.grid = 1;
    REQUIRE(curve(o).code == 1);
  }
  {
    cli::CurveOptions o;
    o.theta_hi = 1.5;
    REQUIRE(curve(o).code == 1);
  }
  {
    cli::CurveOptions o;
    o.berger_boos = true;
    o.gamma = 0.0;
    REQUIRE(curve(o).code == 1);
  }
  {
    cli::CurveOptions o;
    o.band = "a:b";
    REQUIRE(curve(o).code == 1);
  }
  {
    cli::CurveOptions o;
    o.alpha_line = 1.5;
    REQUIRE(curve(o).code == 1);
  }
  {
    cli::CurveOptions o;
    o.data.x = 11;  // x > m
    const Run r = curve(o);
    REQUIRE(r.code == 1);
    REQUIRE_FALSE(r.err.empty());
  }
  {
    cli::PValueOptions o;  // --h0 missing
    REQUIRE(pvalue(o).code == 1);
  }
  {
    cli::PValueOptions o;
    o.h0 = "abc";
    REQUIRE(pvalue(o).code == 1);
  }
  {
    cli::PValueOptions o;
    o.h0 = "0.5:0.1";
    REQUIRE(pvalue(o).code == 1);
  }
  {
    cli::CiOptions o;
    o.alpha = 1.5;
    REQUIRE(ci(o).code == 1);
  }
  {
    cli::VerifyOptions o;
    o.omega_count = 0;
    REQUIRE(verify(o).code == 1);
  }
  {
    cli::VerifyOptions o;
    o.m = 30;
    o.n = 30;
    const Run r = verify(o);
    REQUIRE(r.code == 1);
    REQUIRE(r.err.find("outcomes") != std::string::npos);
  }
}

TEST_CASE("pvalue at the observed difference is one", "[cli]") {
  cli::PValueOptions o;
  o.h0 = "0.45";
  o.sup.omega_grid = 501;
  const Run r = pvalue(o);
  REQUIRE(r.code == 0);

  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("variant").get<std::string>() == "plain");
  REQUIRE(j.at("theta_lo").get<double>() == 0.45);
  REQUIRE(j.at("theta_hi").get<double>() == 0.45);
  REQUIRE_THAT(j.at("p_value").get<double>(),
               Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("berger-boos pvalue stays within gamma of plain", "[cli]") {
  cli::PValueOptions base;
  base.h0 = "0:0.2";
  base.h0_grid = 101;
  base.sup.omega_grid = 501;
  const Run plain = pvalue(base);
  REQUIRE(plain.code == 0);
  const double p_plain = nlohmann::json::parse(plain.out).at("p_value").get<double>();

  cli::PValueOptions bb = base;
  bb.berger_boos = true;
  bb.gamma = 0.05;
  const Run refined = pvalue(bb);
  REQUIRE(refined.code == 0);
  const auto j = nlohmann::json::parse(refined.out);
  REQUIRE(j.at("variant").get<std::string>() == "berger_boos");
  REQUIRE(j.at("gamma").get<double>() == 0.05);
  const double p_bb = j.at("p_value").get<double>();
  REQUIRE(p_bb >= bb.gamma);
  REQUIRE(p_bb <= p_plain + bb.gamma + 1e-6);
}

TEST_CASE("ci cuts nest and cover the point estimate", "[cli]") {
  cli::CiOptions o;
  o.grid = 151;
  o.sup.omega_grid = 501;
  o.alpha = 0.05;
  o.workers = 2;
  const Run wide = ci(o);
  REQUIRE(wide.code == 0);
  const auto j1 = nlohmann::json::parse(wide.out);
  REQUIRE_FALSE(j1.at("hull").is_null());
  const double lo1 = j1.at("hull").at("lo").get<double>();
  const double hi1 = j1.at("hull").at("hi").get<double>();
  REQUIRE(lo1 < 0.45);
  REQUIRE(hi1 > 0.45);

  o.alpha = 0.2;
  const Run tight = ci(o);
  REQUIRE(tight.code == 0);
  const auto j2 = nlohmann::json::parse(tight.out);
  const double lo2 = j2.at("hull").at("lo").get<double>();
  const double hi2 = j2.at("hull").at("hi").get<double>();
  REQUIRE(lo2 >= lo1 - 1e-12);
  REQUIRE(hi2 <= hi1 + 1e-12);
}

TEST_CASE("default ci endpoints on a fine grid match the dense oracle", "[cli]") {
  cli::CiOptions o;
  o.grid = 2001;
  o.workers = 0;
  const Run r = ci(o);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE_THAT(j.at("hull").at("lo").get<double>(),
               Catch::Matchers::WithinAbs(0.05, 1e-3));
  REQUIRE_THAT(j.at("hull").at("hi").get<double>(),
               Catch::Matchers::WithinAbs(0.725, 1e-3));
}

TEST_CASE("verify passes on the smallest design", "[cli]") {
  const fs::path report_path = temp_dir() / "verify_1_1.json";
  cli::VerifyOptions o;
  o.m = 1;
  o.n = 1;
  o.workers = 2;
  o.json_path = report_path.string();
  const Run r = verify(o);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("PASS") != std::string::npos);

  const auto j = nlohmann::json::parse(slurp(report_path));
  REQUIRE(j.at("passed").get<bool>());
  REQUIRE(j.at("worst_excess").get<double>() <= 1e-12);
}

TEST_CASE("verify reports the berger-boos validity gap", "[cli]") {
  // Degenerate Wald sets (x = 0 or x = m) floor the p-value at gamma, which
  // really does break validity at small m; the verifier must say so (exit 3).
  cli::VerifyOptions o;
  o.m = 2;
  o.n = 2;
  o.berger_boos = true;
  o.gamma = 0.01;
  o.theta_count = 5;
  o.omega_count = 5;
  o.alpha_count = 5;
  o.sup.omega_grid = 301;
  o.workers = 2;
  const Run r = verify(o);
  REQUIRE(r.code == 3);
  REQUIRE(r.out.find("berger_boos") != std::string::npos);
  REQUIRE(r.out.find("FAIL") != std::string::npos);
}

// ---- spawned binary ----

TEST_CASE("help lists flags with defaults", "[cliexec]") {
  const Run r = exec_cli("curve --help", "help");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("--omega-grid") != std::string::npos);
  REQUIRE(r.out.find("[1001]") != std::string::npos);
  REQUIRE(exec_cli("--help", "tophelp").code == 0);
}

TEST_CASE("bad invocations exit 1", "[cliexec]") {
  REQUIRE(exec_cli("", "noargs").code == 1);
  REQUIRE(exec_cli("frobnicate", "badsub").code == 1);
  REQUIRE(exec_cli("curve --nope", "badflag").code == 1);
  REQUIRE(exec_cli("pvalue", "noh0").code == 1);
  REQUIRE(exec_cli("verify -m 30 -n 30", "guard").code == 1);
}

TEST_CASE("pvalue subcommand end to end", "[cliexec]") {
  const Run r = exec_cli("pvalue --h0 0.45 --omega-grid 501", "pvalue");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE_THAT(j.at("p_value").get<double>(),
               Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("verify subcommand end to end", "[cliexec]") {
  const Run r = exec_cli("verify -m 1 -n 1 --workers 2", "verify");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("config file fills defaults but flags win", "[cliexec]") {
  const fs::path cfg = temp_dir() / "curve.ini";
  {
    std::ofstream f(cfg);
    f << "[curve]\ngrid=25\nomega-grid=301\nworkers=2\n"
         "theta-lo=-0.5\ntheta-hi=0.5\n";
  }
  const Run from_cfg = exec_cli("curve --config " + cfg.string(), "cfg1");
  REQUIRE(from_cfg.code == 0);
  REQUIRE(csv_of(from_cfg.out).columns[0].size() == 25);

  const Run overridden =
      exec_cli("curve --config " + cfg.string() + " --grid 11", "cfg2");
  REQUIRE(overridden.code == 0);
  REQUIRE(csv_of(overridden.out).columns[0].size() == 11);

  const Run plain = exec_cli("curve --omega-grid 301 --workers 0", "cfg3");
  REQUIRE(plain.code == 0);
  REQUIRE(csv_of(plain.out).columns[0].size() == 401);  // built-in default
}

TEST_CASE("identical configs give byte-identical output", "[cliexec]") {
  const fs::path a = temp_dir() / "det_a.csv";
  const fs::path b = temp_dir() / "det_b.csv";
  const fs::path c = temp_dir() / "det_c.csv";
  const std::string flags = "curve --grid 51 --omega-grid 501 ";
  REQUIRE(exec_cli(flags + "--workers 4 --csv " + a.string(), "det1").code == 0);
  REQUIRE(exec_cli(flags + "--workers 4 --csv " + b.string(), "det2").code == 0);
  REQUIRE(exec_cli(flags + "--workers 1 --csv " + c.string(), "det3").code == 0);
  const std::string ref = slurp(a);
  REQUIRE_FALSE(ref.empty());
  REQUIRE(slurp(b) == ref);
  REQUIRE(slurp(c) == ref);
}
