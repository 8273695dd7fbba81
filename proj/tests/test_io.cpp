#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzpval/io.hpp"
#include "fuzzpval/svg.hpp"

using namespace fuzzpval;

TEST_CASE("doubles survive a text round trip bitwise", "[io]") {
  const std::vector<double> probes = {
      0.1,    1.0 / 3.0, std::ldexp(1.0, -40), 1e-300, 0.45,
      1.0,    0.0,       -0.725,               3.141592653589793,
      0.026460416615009308};
  for (double x : probes) {
    REQUIRE(parse_double(format_double(x)) == x);
  }
}

TEST_CASE("parse_double rejects junk", "[io]") {
  for (const char* bad : {"", "abc", "1.2.3", "1e", "1.0x", " 1.0"}) {
    REQUIRE_THROWS_AS(parse_double(bad), std::invalid_argument);
  }
}

TEST_CASE("csv write/read round trip", "[io]") {
  const std::vector<double> a = {0.1, 0.2, 1.0 / 7.0};
  const std::vector<double> b = {1.0, 0.5, 0.026460416615009308};
  std::ostringstream os;
  write_csv(os, {"theta", "mu"}, {&a, &b});

  std::istringstream is(os.str());
  const CsvTable t = read_csv(is);
  REQUIRE(t.headers == std::vector<std::string>{"theta", "mu"});
  REQUIRE(t.columns[0] == a);
  REQUIRE(t.columns[1] == b);

  const std::vector<double> ragged = {1.0};
  std::ostringstream bad;
  REQUIRE_THROWS_AS(write_csv(bad, {"a", "b"}, {&a, &ragged}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(write_csv(bad, {"a"}, {&a, &b}), std::invalid_argument);

  std::istringstream empty("");
  REQUIRE_THROWS_AS(read_csv(empty), std::invalid_argument);
  std::istringstream short_row("a,b\n1.0\n");
  REQUIRE_THROWS_AS(read_csv(short_row), std::invalid_argument);
}

TEST_CASE("curve csv round trip is bitwise", "[io]") {
  const MembershipCurve curve = triangular_curve(0.3, 0.5, {-0.2, 0.8, 41});
  std::ostringstream os;
  curve_to_csv(os, curve);
  REQUIRE(os.str().rfind("theta,mu\n", 0) == 0);

  std::istringstream is(os.str());
  const MembershipCurve back = curve_from_csv(is);
  REQUIRE(back.grid() == curve.grid());
  REQUIRE(back.values() == curve.values());
}

TEST_CASE("curve json schema and round trip", "[io]") {
  const MembershipCurve curve = triangular_curve(10.0, 2.0, {8.0, 12.0, 101});
  const std::string text = curve_to_json(curve);

  const auto j = nlohmann::json::parse(text);
  REQUIRE(j.at("schema_version").get<int>() == 1);
  REQUIRE(j.at("grid_spec").at("lo").get<double>() == curve.meta().lo);
  REQUIRE(j.at("grid_spec").at("hi").get<double>() == curve.meta().hi);
  REQUIRE(j.at("grid_spec").at("count").get<int>() == curve.meta().count);
  REQUIRE_FALSE(j.contains("values_bb"));

  const MembershipCurve back = curve_from_json(text);
  REQUIRE(back.grid() == curve.grid());
  REQUIRE(back.values() == curve.values());
  REQUIRE_FALSE(bb_curve_from_json(text).has_value());
}

TEST_CASE("curve json carries an optional companion column", "[io]") {
  const MembershipCurve plain = triangular_curve(10.0, 2.0, {8.0, 12.0, 51});
  const MembershipCurve bb = triangular_curve(10.0, 1.0, {8.0, 12.0, 51});
  const std::string text = curve_to_json(plain, &bb);

  const auto back = bb_curve_from_json(text);
  REQUIRE(back.has_value());
  REQUIRE(back->values() == bb.values());
  REQUIRE(curve_from_json(text).values() == plain.values());

  const MembershipCurve other_grid = triangular_curve(10.0, 1.0, {8.0, 12.0, 41});
  REQUIRE_THROWS_AS(curve_to_json(plain, &other_grid), std::invalid_argument);
}

TEST_CASE("alpha cut json", "[io]") {
  const MembershipCurve curve = triangular_curve(10.0, 1.0, {8.0, 12.0, 401});
  const AlphaCut cut = strong_cut(curve, 0.5);
  const auto j = nlohmann::json::parse(cut_to_json(cut));
  REQUIRE(j.at("schema_version").get<int>() == 1);
  REQUIRE(j.at("alpha").get<double>() == 0.5);
  REQUIRE(j.at("intervals").size() == cut.intervals.size());
  REQUIRE(j.at("hull").at("lo").get<double>() == cut.hull().lo);
  REQUIRE(j.at("hull").at("hi").get<double>() == cut.hull().hi);

  const AlphaCut none = strong_cut(curve, 1.0);
  const auto je = nlohmann::json::parse(cut_to_json(none));
  REQUIRE(je.at("hull").is_null());
  REQUIRE(je.at("intervals").empty());
}

TEST_CASE("extended p-value json", "[io]") {
  const ExtendedPValue ext{0.0, 0.2, 0.23870188492317637, 0.2, false};
  const auto j = nlohmann::json::parse(extended_to_json(ext));
  REQUIRE(j.at("theta_lo").get<double>() == 0.0);
  REQUIRE(j.at("theta_hi").get<double>() == 0.2);
  REQUIRE(j.at("p_value").get<double>() == 0.23870188492317637);
  REQUIRE(j.at("refined_argmax").get<double>() == 0.2);
}

TEST_CASE("validity report serialization", "[io]") {
  ValidityGrids grids;
  grids.theta = GridSpec{-0.5, 0.5, 3};
  grids.omega_points = 3;
  grids.alpha = GridSpec{0.1, 0.9, 5};
  const ValidityReport report =
      run_validity(1, 1, grids, PValueVariant::berger_boos(0.01));

  const auto j = nlohmann::json::parse(report_to_json(report));
  REQUIRE(j.at("m").get<int>() == 1);
  REQUIRE(j.at("n").get<int>() == 1);
  REQUIRE(j.at("variant").get<std::string>() == "berger_boos");
  REQUIRE(j.at("gamma").get<double>() == 0.01);
  REQUIRE(j.at("worst_excess").get<double>() == report.worst_excess);
  REQUIRE(j.at("passed").get<bool>() == report.passed());
  REQUIRE(j.at("cells").size() == report.cells.size());
  REQUIRE_FALSE(nlohmann::json::parse(report_to_json(report, false)).contains("cells"));

  const ValidityReport plain = run_validity(1, 1, grids);
  const auto jp = nlohmann::json::parse(report_to_json(plain, false));
  REQUIRE(jp.at("variant").get<std::string>() == "plain");
  REQUIRE_FALSE(jp.contains("gamma"));

  const std::string text = report_to_text(plain);
  REQUIRE(text.find(plain.passed() ? "PASS" : "FAIL") != std::string::npos);
  REQUIRE(text.find("worst excess") != std::string::npos);
}

TEST_CASE("svg rendering", "[io]") {
  const MembershipCurve a = triangular_curve(10.0, 1.0, {8.0, 12.0, 101});
  const MembershipCurve b = triangular_curve(10.0, 2.0, {8.0, 12.0, 101});
  SvgOptions opt;
  opt.alpha_line = 0.5;
  opt.band = {9.5, 10.5};
  const std::string svg = render_curve_svg({{&a, "mu_a"}, {&b, "mu_b"}}, opt);

  REQUIRE(svg.rfind("<svg", 0) == 0);
  REQUIRE(svg.find("</svg>") != std::string::npos);
  REQUIRE(svg.find("polyline") != std::string::npos);
  REQUIRE(svg.find("stroke-dasharray") != std::string::npos);  // alpha line
  REQUIRE(svg.find("fill-opacity") != std::string::npos);      // band
  REQUIRE(svg.find("mu_a") != std::string::npos);
  REQUIRE(svg.find("mu_b") != std::string::npos);
  REQUIRE(svg.find("<script") == std::string::npos);

  REQUIRE_THROWS_AS(render_curve_svg({}), std::invalid_argument);
}
