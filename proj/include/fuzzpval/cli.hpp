#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fuzzpval/io.hpp"
#include "fuzzpval/membership.hpp"
#include "fuzzpval/svg.hpp"
#include "fuzzpval/validity.hpp"

namespace fuzzpval::cli {

// Data flags default to the motivating 4/10 vs 17/20 example.
struct DataOptions {
  int x = 4;
  int m = 10;
  int y = 17;
  int n = 20;
};

struct SupOptions {
  int omega_grid = 1001;
  double omega_tol = 1e-8;
};

struct CurveOptions {
  DataOptions data;
  SupOptions sup;
  double theta_lo = -0.999;
  double theta_hi = 0.999;
  int grid = 401;
  bool berger_boos = false;
  double gamma = 1e-4;
  int workers = 0;  // 0 = all cores
  std::string csv_path;
  std::string json_path;
  std::string svg_path;
  std::optional<double> alpha_line;
  std::optional<std::string> band;  // "lo:hi"
  bool demo_fuzzy = false;
};

struct PValueOptions {
  DataOptions data;
  SupOptions sup;
  std::string h0;  // "lo:hi" or a single theta
  int h0_grid = 201;
  double theta_tol = 1e-6;
  bool berger_boos = false;
  double gamma = 1e-4;
  std::string json_path;
};

struct CiOptions {
  DataOptions data;
  SupOptions sup;
  double alpha = 0.05;
  double theta_lo = -0.999;
  double theta_hi = 0.999;
  int grid = 401;
  int workers = 0;
  std::string json_path;
};

struct VerifyOptions {
  int m = 3;
  int n = 3;
  SupOptions sup;
  bool berger_boos = false;
  double gamma = 1e-4;
  double theta_lo = -0.9;
  double theta_hi = 0.9;
  int theta_count = 21;
  int omega_count = 21;
  double alpha_lo = 0.05;
  double alpha_hi = 0.95;
  int alpha_count = 19;
  bool force = false;  // override the outcome-count guard
  int workers = 0;
  std::string json_path;
};

namespace detail {

inline std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const double t = parse_double(text);
    return {t, t};
  }
  const double lo = parse_double(text.substr(0, colon));
  const double hi = parse_double(text.substr(colon + 1));
  return {lo, hi};
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

inline void check_theta_grid(const GridSpec& spec) {
  if (spec.count < 2) throw std::domain_error("--grid must be >= 2");
  if (!(spec.lo > -1.0 && spec.hi < 1.0 && spec.lo <= spec.hi)) {
    throw std::domain_error("theta grid must lie inside (-1, 1)");
  }
}

inline EvalConfig eval_config(const SupOptions& sup) {
  EvalConfig cfg;
  cfg.sup.grid_points = sup.omega_grid;
  cfg.sup.omega_tol = sup.omega_tol;
  return cfg;
}

inline int usage_error(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return 1;
}

inline int computation_error(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return 2;
}

}  // namespace detail

inline int run_curve(const CurveOptions& o, std::ostream& out, std::ostream& err) {
  if (o.demo_fuzzy) {
    try {
      const GridSpec spec{7.0, 13.0, 601};
      const MembershipCurve a = triangular_curve(10.0, 1.0, spec);
      const MembershipCurve b = triangular_curve(10.0, 2.0, spec);
      std::ostringstream csv;
      write_csv(csv, {"u", "mu_a", "mu_b"}, {&a.grid(), &a.values(), &b.values()});
      if (!o.csv_path.empty()) {
        detail::write_file(o.csv_path, csv.str());
      }
      if (!o.json_path.empty()) {
        detail::write_file(o.json_path, curve_to_json(a, &b));
      }
      if (!o.svg_path.empty()) {
        SvgOptions svg;
        svg.x_label = "u";
        detail::write_file(o.svg_path,
                           render_curve_svg({{&a, "A: about 10"}, {&b, "B"}}, svg));
      }
      if (o.csv_path.empty() && o.json_path.empty() && o.svg_path.empty()) {
        out << csv.str();
      }
      return 0;
    } catch (const std::exception& e) {
      return detail::computation_error(err, e);
    }
  }

  std::optional<TwoSampleData> data;
  std::optional<GridSpec> spec;
  std::optional<BergerBoosConfig> bb;
  std::optional<std::pair<double, double>> band;
  EvalConfig cfg;
  try {
    data.emplace(o.data.x, o.data.m, o.data.y, o.data.n);
    spec.emplace(GridSpec{o.theta_lo, o.theta_hi, o.grid});
    detail::check_theta_grid(*spec);
    cfg = detail::eval_config(o.sup);
    if (o.berger_boos) bb.emplace(o.gamma);
    if (o.band) band = detail::parse_range(*o.band);
    if (o.alpha_line && !(*o.alpha_line > 0.0 && *o.alpha_line < 1.0)) {
      throw std::domain_error("--alpha-line must lie in (0, 1)");
    }
  } catch (const std::exception& e) {
    return detail::usage_error(err, e);
  }

  try {
    const unsigned workers = resolve_workers(o.workers);
    const MembershipCurve curve = mu_curve(*data, *spec, cfg, workers);
    std::optional<MembershipCurve> curve_bb;
    if (bb) curve_bb = mu_bb_curve(*data, *bb, *spec, cfg, workers);

    std::ostringstream csv;
    if (curve_bb) {
      write_csv(csv, {"theta", "mu", "mu_bb"},
                {&curve.grid(), &curve.values(), &curve_bb->values()});
    } else {
      write_csv(csv, {"theta", "mu"}, {&curve.grid(), &curve.values()});
    }
    if (!o.csv_path.empty()) detail::write_file(o.csv_path, csv.str());
    if (!o.json_path.empty()) {
      detail::write_file(o.json_path,
                         curve_to_json(curve, curve_bb ? &*curve_bb : nullptr));
    }
    if (!o.svg_path.empty()) {
      SvgOptions svg;
      svg.alpha_line = o.alpha_line;
      svg.band = band;
      std::vector<std::pair<const MembershipCurve*, std::string>> layers;
      layers.emplace_back(&curve, "mu");
      if (curve_bb) layers.emplace_back(&*curve_bb, "mu_bb");
      detail::write_file(o.svg_path, render_curve_svg(layers, svg));
    }
    if (o.csv_path.empty() && o.json_path.empty() && o.svg_path.empty()) {
      out << csv.str();
    }
    return 0;
  } catch (const std::exception& e) {
    return detail::computation_error(err, e);
  }
}

inline int run_pvalue(const PValueOptions& o, std::ostream& out, std::ostream& err) {
  std::optional<TwoSampleData> data;
  std::optional<HypothesisSet> h;
  std::optional<BergerBoosConfig> bb;
  EvalConfig cfg;
  try {
    data.emplace(o.data.x, o.data.m, o.data.y, o.data.n);
    if (o.h0.empty()) throw std::domain_error("--h0 is required (lo:hi)");
    const auto [lo, hi] = detail::parse_range(o.h0);
    h = HypothesisSet::interval(lo, hi);
    cfg = detail::eval_config(o.sup);
    cfg.h0_grid_points = o.h0_grid;
    cfg.theta_tol = o.theta_tol;
    if (o.berger_boos) bb.emplace(o.gamma);
  } catch (const std::exception& e) {
    return detail::usage_error(err, e);
  }

  try {
    const ExtendedPValue ext = bb ? bb_extended_pvalue(*data, *h, *bb, cfg)
                                  : extended_pvalue(*data, *h, cfg);
    std::string json = "{\"schema_version\":1,\"variant\":\"";
    json += bb ? "berger_boos" : "plain";
    json += "\"";
    if (bb) json += ",\"gamma\":" + format_double(bb->gamma);
    json += ",\"theta_lo\":" + format_double(ext.theta_lo);
    json += ",\"theta_hi\":" + format_double(ext.theta_hi);
    json += ",\"p_value\":" + format_double(ext.p_value);
    json += ",\"argmax_theta\":" + format_double(ext.argmax_theta);
    json += std::string(",\"refined\":") + (ext.refined ? "true" : "false");
    json += "}";
    out << json << "\n";
    if (!o.json_path.empty()) detail::write_file(o.json_path, json);
    return 0;
  } catch (const std::exception& e) {
    return detail::computation_error(err, e);
  }
}

inline int run_ci(const CiOptions& o, std::ostream& out, std::ostream& err) {
  std::optional<TwoSampleData> data;
  std::optional<GridSpec> spec;
  EvalConfig cfg;
  try {
    data.emplace(o.data.x, o.data.m, o.data.y, o.data.n);
    spec.emplace(GridSpec{o.theta_lo, o.theta_hi, o.grid});
    detail::check_theta_grid(*spec);
    cfg = detail::eval_config(o.sup);
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) {
      throw std::domain_error("--alpha must lie in (0, 1)");
    }
  } catch (const std::exception& e) {
    return detail::usage_error(err, e);
  }

  try {
    const MembershipCurve curve =
        mu_curve(*data, *spec, cfg, resolve_workers(o.workers));
    const AlphaCut cut = confidence_cut(curve, o.alpha);
    const std::string json = cut_to_json(cut);
    out << json << "\n";
    if (!o.json_path.empty()) detail::write_file(o.json_path, json);
    return 0;
  } catch (const std::exception& e) {
    return detail::computation_error(err, e);
  }
}

inline int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  ValidityGrids grids;
  PValueVariant variant;
  EvalConfig cfg;
  try {
    check_outcome_guard(o.m, o.n, o.force);
    grids.theta = GridSpec{o.theta_lo, o.theta_hi, o.theta_count};
    grids.alpha = GridSpec{o.alpha_lo, o.alpha_hi, o.alpha_count};
    if (o.omega_count < 1) throw std::domain_error("--omega-count must be >= 1");
    grids.omega_points = o.omega_count;
    variant = o.berger_boos ? PValueVariant::berger_boos(o.gamma)
                            : PValueVariant::plain();
    if (o.berger_boos && !(o.gamma > 0.0 && o.gamma < 1.0)) {
      throw std::domain_error("--gamma must lie in (0, 1)");
    }
    cfg = detail::eval_config(o.sup);
  } catch (const std::exception& e) {
    return detail::usage_error(err, e);
  }

  try {
    const ValidityReport report = run_validity(
        o.m, o.n, grids, variant, cfg, o.force, resolve_workers(o.workers));
    out << report_to_text(report);
    if (!o.json_path.empty()) detail::write_file(o.json_path, report_to_json(report));
    return report.passed() ? 0 : 3;
  } catch (const std::exception& e) {
    return detail::computation_error(err, e);
  }
}

}  // namespace fuzzpval::cli
