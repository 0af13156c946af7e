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

#ifndef HEXWRENCH__SVG_PLOT_HPP_
#define HEXWRENCH__SVG_PLOT_HPP_

#include <string>
#include <vector>

namespace hexwrench
{

struct PlotSeries
{
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  /// Draw markers instead of a polyline.
  bool markers{false};
};

struct Plot
{
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x{false};
  std::vector<PlotSeries> series;
};

/// Static SVG document; non-finite points are skipped. Output is deterministic.
std::string render_svg(const Plot & plot);

}  // namespace hexwrench

#endif  // HEXWRENCH__SVG_PLOT_HPP_
