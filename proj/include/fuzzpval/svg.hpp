#pragma once

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzpval/fuzzy.hpp"

namespace fuzzpval {

struct SvgOptions {
  int width = 800;
  int height = 480;
  int margin = 56;
  std::string x_label = "theta";
  std::string y_label = "mu";
  std::optional<double> alpha_line;                 // horizontal dashed level
  std::optional<std::pair<double, double>> band;    // shaded x-interval
};

namespace detail {

inline std::string svg_num(double x, int precision = 2) {
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

inline std::string svg_label(double x) {
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// Self-contained SVG: inline styling only, no external assets. Curves share
// the first curve's x-domain; y-domain is fixed to [0, 1].
inline std::string render_curve_svg(
    const std::vector<std::pair<const MembershipCurve*, std::string>>& curves,
    const SvgOptions& opt = {}) {
  if (curves.empty() || curves.front().first == nullptr) {
    throw std::invalid_argument("render_curve_svg: need at least one curve");
  }
  const MembershipCurve& base = *curves.front().first;
  const double x0 = base.domain_lo();
  const double x1 = base.domain_hi();
  const double w = opt.width, h = opt.height, m = opt.margin;
  const double plot_w = w - 2 * m, plot_h = h - 2 * m;
  auto sx = [&](double x) { return m + (x - x0) / (x1 - x0) * plot_w; };
  auto sy = [&](double y) { return h - m - std::clamp(y, 0.0, 1.0) * plot_h; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opt.width) + "\" height=\"" + std::to_string(opt.height) +
         "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
         std::to_string(opt.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (opt.band) {
    const double bl = std::clamp(opt.band->first, x0, x1);
    const double bh = std::clamp(opt.band->second, x0, x1);
    out += "<rect x=\"" + detail::svg_num(sx(bl)) + "\" y=\"" +
           detail::svg_num(m) + "\" width=\"" + detail::svg_num(sx(bh) - sx(bl)) +
           "\" height=\"" + detail::svg_num(plot_h) +
           "\" fill=\"#f2c94c\" fill-opacity=\"0.25\"/>\n";
  }

  // axes + ticks
  out += "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
  out += "<path d=\"M" + detail::svg_num(m) + " " + detail::svg_num(m) + " V" +
         detail::svg_num(h - m) + " H" + detail::svg_num(w - m) + "\"/>\n";
  out += "</g>\n";
  out += "<g font-family=\"monospace\" font-size=\"12\" fill=\"#333\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xt = x0 + (x1 - x0) * i / 4.0;
    const double px = sx(xt);
    out += "<line x1=\"" + detail::svg_num(px) + "\" y1=\"" + detail::svg_num(h - m) +
           "\" x2=\"" + detail::svg_num(px) + "\" y2=\"" +
           detail::svg_num(h - m + 5) + "\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + detail::svg_num(px) + "\" y=\"" +
           detail::svg_num(h - m + 20) + "\" text-anchor=\"middle\">" +
           detail::svg_label(xt) + "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double yt = i / 4.0;
    const double py = sy(yt);
    out += "<line x1=\"" + detail::svg_num(m - 5) + "\" y1=\"" + detail::svg_num(py) +
           "\" x2=\"" + detail::svg_num(m) + "\" y2=\"" + detail::svg_num(py) +
           "\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + detail::svg_num(m - 9) + "\" y=\"" +
           detail::svg_num(py + 4) + "\" text-anchor=\"end\">" +
           detail::svg_label(yt) + "</text>\n";
  }
  out += "<text x=\"" + detail::svg_num(m + plot_w / 2) + "\" y=\"" +
         detail::svg_num(h - 12) + "\" text-anchor=\"middle\">" + opt.x_label +
         "</text>\n";
  out += "<text x=\"16\" y=\"" + detail::svg_num(m + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         detail::svg_num(m + plot_h / 2) + ")\">" + opt.y_label + "</text>\n";
  out += "</g>\n";

  if (opt.alpha_line) {
    const double py = sy(*opt.alpha_line);
    out += "<line x1=\"" + detail::svg_num(m) + "\" y1=\"" + detail::svg_num(py) +
           "\" x2=\"" + detail::svg_num(w - m) + "\" y2=\"" + detail::svg_num(py) +
           "\" stroke=\"#555\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  }

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const MembershipCurve& curve = *curves[c].first;
    std::string pts;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      if (i) pts += ' ';
      pts += detail::svg_num(sx(curve.grid()[i])) + "," +
             detail::svg_num(sy(curve.values()[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(kColors[c % 4]) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    if (!curves[c].second.empty()) {
      out += "<text x=\"" + detail::svg_num(w - m - 8) + "\" y=\"" +
             detail::svg_num(m + 16 + 16 * static_cast<double>(c)) +
             "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\" fill=\"" +
             kColors[c % 4] + "\">" + curves[c].second + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fuzzpval
