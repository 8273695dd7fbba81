#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fuzzpval/cli.hpp"

namespace {

namespace cli = fuzzpval::cli;

void add_data_flags(CLI::App* cmd, cli::DataOptions& d) {
  cmd->add_option("-x", d.x, "successes in arm 1")->capture_default_str();
  cmd->add_option("-m", d.m, "trials in arm 1")->capture_default_str();
  cmd->add_option("-y", d.y, "successes in arm 2")->capture_default_str();
  cmd->add_option("-n", d.n, "trials in arm 2")->capture_default_str();
}

void add_sup_flags(CLI::App* cmd, cli::SupOptions& s) {
  cmd->add_option("--omega-grid", s.omega_grid, "omega scan grid points")
      ->capture_default_str();
  cmd->add_option("--omega-tol", s.omega_tol, "omega refinement tolerance")
      ->capture_default_str();
}

void add_theta_grid_flags(CLI::App* cmd, double& lo, double& hi, int& count) {
  cmd->add_option("--theta-lo", lo, "theta grid lower end")->capture_default_str();
  cmd->add_option("--theta-hi", hi, "theta grid upper end")->capture_default_str();
  cmd->add_option("--grid", count, "theta grid point count")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy membership curves from exact unconditional p-values\n"
               "for the difference of two binomial proportions"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --config appear after the subcommand name
  app.set_config("--config", "",
                 "config file: key=value under a [subcommand] section");

  cli::CurveOptions curve_opts;
  CLI::App* curve = app.add_subcommand(
      "curve", "sample the membership curve mu(theta), write CSV/JSON/SVG");
  add_data_flags(curve, curve_opts.data);
  add_sup_flags(curve, curve_opts.sup);
  add_theta_grid_flags(curve, curve_opts.theta_lo, curve_opts.theta_hi,
                       curve_opts.grid);
  curve->add_flag("--berger-boos", curve_opts.berger_boos,
                  "add the Berger-Boos column mu_bb");
  curve->add_option("--gamma", curve_opts.gamma, "Berger-Boos gamma")
      ->capture_default_str();
  curve->add_option("--workers", curve_opts.workers, "worker threads (0 = cores)")
      ->capture_default_str();
  curve->add_option("--csv", curve_opts.csv_path, "CSV output path");
  curve->add_option("--json", curve_opts.json_path, "JSON output path");
  curve->add_option("--svg", curve_opts.svg_path, "SVG output path");
  curve->add_option("--alpha-line", curve_opts.alpha_line,
                    "draw a dashed horizontal level line in the SVG");
  curve->add_option("--band", curve_opts.band,
                    "shade a theta band lo:hi in the SVG");
  curve->add_flag("--demo-fuzzy", curve_opts.demo_fuzzy,
                  "emit the triangular example curves instead of mu");

  cli::PValueOptions pvalue_opts;
  CLI::App* pvalue = app.add_subcommand(
      "pvalue", "extended p-value sup over H0: theta in [lo, hi]");
  add_data_flags(pvalue, pvalue_opts.data);
  add_sup_flags(pvalue, pvalue_opts.sup);
  pvalue->add_option("--h0", pvalue_opts.h0, "hypothesis interval lo:hi")
      ->required();
  pvalue->add_option("--h0-grid", pvalue_opts.h0_grid, "theta scan points on H0")
      ->capture_default_str();
  pvalue->add_option("--theta-tol", pvalue_opts.theta_tol,
                     "theta refinement tolerance")
      ->capture_default_str();
  pvalue->add_flag("--berger-boos", pvalue_opts.berger_boos,
                   "use the Berger-Boos p-value");
  pvalue->add_option("--gamma", pvalue_opts.gamma, "Berger-Boos gamma")
      ->capture_default_str();
  pvalue->add_option("--json", pvalue_opts.json_path, "JSON output path");

  cli::CiOptions ci_opts;
  CLI::App* ci = app.add_subcommand(
      "ci", "confidence set of level 1-alpha from the strong alpha-cut");
  add_data_flags(ci, ci_opts.data);
  add_sup_flags(ci, ci_opts.sup);
  add_theta_grid_flags(ci, ci_opts.theta_lo, ci_opts.theta_hi, ci_opts.grid);
  ci->add_option("--alpha", ci_opts.alpha, "cut level alpha")->capture_default_str();
  ci->add_option("--workers", ci_opts.workers, "worker threads (0 = cores)")
      ->capture_default_str();
  ci->add_option("--json", ci_opts.json_path, "JSON output path");

  cli::VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "exhaustively check p-value validity and cut coverage");
  verify->add_option("-m", verify_opts.m, "trials in arm 1")->capture_default_str();
  verify->add_option("-n", verify_opts.n, "trials in arm 2")->capture_default_str();
  add_sup_flags(verify, verify_opts.sup);
  verify->add_flag("--berger-boos", verify_opts.berger_boos,
                   "verify the Berger-Boos variant");
  verify->add_option("--gamma", verify_opts.gamma, "Berger-Boos gamma")
      ->capture_default_str();
  verify->add_option("--theta-lo", verify_opts.theta_lo, "theta grid lower end")
      ->capture_default_str();
  verify->add_option("--theta-hi", verify_opts.theta_hi, "theta grid upper end")
      ->capture_default_str();
  verify->add_option("--theta-count", verify_opts.theta_count, "theta grid points")
      ->capture_default_str();
  verify->add_option("--omega-count", verify_opts.omega_count,
                     "interior omega points per theta")
      ->capture_default_str();
  verify->add_option("--alpha-lo", verify_opts.alpha_lo, "alpha grid lower end")
      ->capture_default_str();
  verify->add_option("--alpha-hi", verify_opts.alpha_hi, "alpha grid upper end")
      ->capture_default_str();
  verify->add_option("--alpha-count", verify_opts.alpha_count, "alpha grid points")
      ->capture_default_str();
  verify->add_flag("--force", verify_opts.force,
                   "override the (m+1)(n+1) <= 400 enumeration guard");
  verify->add_option("--workers", verify_opts.workers, "worker threads (0 = cores)")
      ->capture_default_str();
  verify->add_option("--json", verify_opts.json_path, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (curve->parsed()) return cli::run_curve(curve_opts, std::cout, std::cerr);
  if (pvalue->parsed()) return cli::run_pvalue(pvalue_opts, std::cout, std::cerr);
  if (ci->parsed()) return cli::run_ci(ci_opts, std::cout, std::cerr);
  if (verify->parsed()) return cli::run_verify(verify_opts, std::cout, std::cerr);
  return 1;
}
