// Copyright 2026 The hexwrench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hexwrench/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hexwrench
{

namespace
{

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char *, 8> kColors{
  "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string & s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range
{
  double lo{std::numeric_limits<double>::infinity()};
  double hi{-std::numeric_limits<double>::infinity()};

  void add(double v)
  {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void finish()
  {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string render_svg(const Plot & plot)
{
  auto xv = [&](double x) {return plot.log_x ? std::log10(x) : x;};
  auto usable = [&](double x, double y) {
      return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0.0);
    };

  Range xr;
  Range yr;
  for (const auto & s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) {continue;}
      xr.add(xv(s.x[i]));
      yr.add(s.y[i]);
    }
  }
  xr.finish();
  yr.finish();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) {return kLeft + (xv(x) - xr.lo) / (xr.hi - xr.lo) * pw;};
  auto py = [&](double y) {return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph;};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
    num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
    escape(plot.title) + "</text>\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" +
    num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double gx = kLeft + pw * i / 4.0;
    svg += "<text x=\"" + num(gx) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
      tick(plot.log_x ? std::pow(10.0, fx) : fx) + "</text>\n";
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    const double gy = kTop + ph - ph * i / 4.0;
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(gy + 4) + "\" text-anchor=\"end\">" +
      tick(fy) + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 10) + "\" text-anchor=\"middle\">" +
    escape(plot.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
    num(kTop + ph / 2) + ")\">" + escape(plot.y_label) + "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto & s = plot.series[k];
    const std::string color = kColors[k % kColors.size()];
    if (s.markers) {
      for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
        if (!usable(s.x[i], s.y[i])) {continue;}
        svg += "<circle cx=\"" + num(px(s.x[i])) + "\" cy=\"" + num(py(s.y[i])) + "\" r=\"1.5\" fill=\"" +
          color + "\"/>\n";
      }
    } else {
      std::string points;
      for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
        if (!usable(s.x[i], s.y[i])) {continue;}
        if (!points.empty()) {points += ' ';}
        points += num(px(s.x[i])) + "," + num(py(s.y[i]));
      }
      svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
    }
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
    svg += "<rect x=\"" + num(kWidth - kRight + 12) + "\" y=\"" + num(ly - 9) +
      "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + num(kWidth - kRight + 28) + "\" y=\"" + num(ly) + "\">" + escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hexwrench
