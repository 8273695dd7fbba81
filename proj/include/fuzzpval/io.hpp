#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "fuzzpval/fuzzy.hpp"
#include "fuzzpval/membership.hpp"
#include "fuzzpval/validity.hpp"

namespace fuzzpval {

// 17 significant digits: lossless binary64 round-trip, locale-independent.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double out = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse_double: bad number '" + std::string(s) + "'");
  }
  return out;
}

// ---- CSV ----

// Columns share one grid; header row first, 17-digit values.
inline void write_csv(std::ostream& os, const std::vector<std::string>& headers,
                      const std::vector<const std::vector<double>*>& columns) {
  if (headers.size() != columns.size() || columns.empty()) {
    throw std::invalid_argument("write_csv: header/column mismatch");
  }
  const std::size_t rows = columns.front()->size();
  for (const auto* col : columns) {
    if (col->size() != rows) throw std::invalid_argument("write_csv: ragged columns");
  }
  for (std::size_t j = 0; j < headers.size(); ++j) {
    if (j) os << ',';
    os << headers[j];
  }
  os << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) os << ',';
      os << format_double((*columns[j])[i]);
    }
    os << '\n';
  }
}

struct CsvTable {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> columns;
};

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("read_csv: empty input");
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.headers.push_back(cell);
  }
  table.columns.resize(table.headers.size());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(row, cell, ',')) {
      if (j >= table.columns.size()) throw std::invalid_argument("read_csv: ragged row");
      table.columns[j++].push_back(parse_double(cell));
    }
    if (j != table.columns.size()) throw std::invalid_argument("read_csv: ragged row");
  }
  return table;
}

inline void curve_to_csv(std::ostream& os, const MembershipCurve& curve,
                         const std::string& grid_name = "theta",
                         const std::string& value_name = "mu") {
  write_csv(os, {grid_name, value_name}, {&curve.grid(), &curve.values()});
}

inline MembershipCurve curve_from_csv(std::istream& is) {
  const CsvTable t = read_csv(is);
  if (t.columns.size() < 2) throw std::invalid_argument("curve_from_csv: need 2 columns");
  return MembershipCurve(t.columns[0], t.columns[1]);
}

// ---- JSON ----
// Writing is hand-assembled so numeric formatting (and thus byte output) is
// fully deterministic; parsing goes through nlohmann::json.

namespace detail {

inline void json_array(std::string& out, const std::vector<double>& xs) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  out += ']';
}

}  // namespace detail

inline std::string curve_to_json(const MembershipCurve& curve,
                                 const MembershipCurve* bb = nullptr) {
  std::string out = "{\"schema_version\":1,\"grid_spec\":{\"lo\":";
  out += format_double(curve.meta().lo);
  out += ",\"hi\":";
  out += format_double(curve.meta().hi);
  out += ",\"count\":";
  out += std::to_string(curve.meta().count);
  out += "},\"grid\":";
  detail::json_array(out, curve.grid());
  out += ",\"values\":";
  detail::json_array(out, curve.values());
  if (bb) {
    if (bb->grid() != curve.grid()) {
      throw std::invalid_argument("curve_to_json: curves must share one grid");
    }
    out += ",\"values_bb\":";
    detail::json_array(out, bb->values());
  }
  out += "}";
  return out;
}

inline MembershipCurve curve_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  return MembershipCurve(j.at("grid").get<std::vector<double>>(),
                         j.at("values").get<std::vector<double>>());
}

inline std::optional<MembershipCurve> bb_curve_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("values_bb")) return std::nullopt;
  return MembershipCurve(j.at("grid").get<std::vector<double>>(),
                         j.at("values_bb").get<std::vector<double>>());
}

inline std::string cut_to_json(const AlphaCut& cut) {
  std::string out = "{\"schema_version\":1,\"alpha\":";
  out += format_double(cut.alpha);
  out += ",\"hull\":";
  if (cut.empty()) {
    out += "null";
  } else {
    const Interval h = cut.hull();
    out += "{\"lo\":" + format_double(h.lo) + ",\"hi\":" + format_double(h.hi) + "}";
  }
  out += ",\"intervals\":[";
  for (std::size_t i = 0; i < cut.intervals.size(); ++i) {
    if (i) out += ',';
    out += "{\"lo\":" + format_double(cut.intervals[i].lo) +
           ",\"hi\":" + format_double(cut.intervals[i].hi) + "}";
  }
  out += "]}";
  return out;
}

inline std::string extended_to_json(const ExtendedPValue& ext) {
  std::string out = "{\"theta_lo\":";
  out += format_double(ext.theta_lo);
  out += ",\"theta_hi\":";
  out += format_double(ext.theta_hi);
  out += ",\"p_value\":";
  out += format_double(ext.p_value);
  out += ",\"refined_argmax\":";
  out += format_double(ext.argmax_theta);
  out += "}";
  return out;
}

inline std::string report_to_json(const ValidityReport& report,
                                  bool include_cells = true) {
  std::string out = "{\"schema_version\":1,\"m\":";
  out += std::to_string(report.m);
  out += ",\"n\":";
  out += std::to_string(report.n);
  out += ",\"variant\":\"" + report.variant.name() + "\"";
  if (report.variant.kind == PValueVariant::Kind::berger_boos) {
    out += ",\"gamma\":" + format_double(report.variant.gamma);
  }
  out += ",\"theta_grid\":";
  detail::json_array(out, linspace(report.grids.theta));
  out += ",\"omega_interior_points\":";
  out += std::to_string(report.grids.omega_points);
  out += ",\"alpha_grid\":";
  detail::json_array(out, linspace(report.grids.alpha));
  out += ",\"worst_excess\":" + format_double(report.worst_excess);
  out += ",\"worst_coverage_deficit\":" + format_double(report.worst_coverage_deficit);
  out += ",\"slack\":" + format_double(ValidityReport::kSlack);
  out += std::string(",\"passed\":") + (report.passed() ? "true" : "false");
  if (include_cells) {
    out += ",\"cells\":[";
    for (std::size_t i = 0; i < report.cells.size(); ++i) {
      const auto& c = report.cells[i];
      if (i) out += ',';
      out += "{\"theta\":" + format_double(c.theta);
      out += ",\"omega\":" + format_double(c.omega);
      out += ",\"alpha\":" + format_double(c.alpha);
      out += ",\"excess\":" + format_double(c.excess);
      out += ",\"coverage\":" + format_double(c.coverage) + "}";
    }
    out += "]";
  }
  out += "}";
  return out;
}

inline std::string report_to_text(const ValidityReport& report) {
  std::ostringstream os;
  os << "validity report: m=" << report.m << " n=" << report.n
     << " variant=" << report.variant.name();
  if (report.variant.kind == PValueVariant::Kind::berger_boos) {
    os << " gamma=" << format_double(report.variant.gamma);
  }
  os << "\n  cells: " << report.cells.size() << " (theta "
     << report.grids.theta.count << " x omega " << report.grids.omega_points
     << " x alpha " << report.grids.alpha.count << ")";
  os << "\n  worst excess P[p<=a]-a:      " << format_double(report.worst_excess);
  os << "\n  worst coverage deficit:      " << format_double(report.worst_coverage_deficit);
  os << "\n  slack: " << format_double(ValidityReport::kSlack) << " -> "
     << (report.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace fuzzpval
