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

/**
 * @file evaluation.hpp
 *
 * Per-axis error metrics of a measured force/torque series against a
 * reference series. All results are fractions (multiply by 100 for %).
 *
 * Cycle segmentation: the loading direction is the sign of the first
 * reference excursion beyond half its peak. Once the signed reference has
 * fallen below 10% of the peak, the next rise above 50% opens a cycle. The
 * cycle starts at the last sample at or below 1% of the peak before that
 * rise (or at the lowest sample if none is that close to zero). A cycle's
 * loading branch runs from its start to its peak, the unloading branch from
 * the peak to the first sample back at or below 1% of the peak.
 */

#ifndef HEXWRENCH__EVALUATION_HPP_
#define HEXWRENCH__EVALUATION_HPP_

#include "hexwrench/types.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <vector>

namespace hexwrench
{

using SeriesRef = Eigen::Ref<const Eigen::VectorXd>;

/// sum|meas - ref| / (N * max|ref|). Throws when ref is identically zero.
double deviation_rate(const SeriesRef & meas, const SeriesRef & ref);

/// Start index of every load cycle found in ref.
std::vector<Eigen::Index> cycle_starts(const SeriesRef & ref);

/**
 * Mean absolute difference between cycle-aligned samples of consecutive
 * measured cycles, halved and normalised by max|ref|. Cycles are truncated
 * to the shortest. Throws with fewer than two cycles.
 */
double repeatability_error(const SeriesRef & meas, const SeriesRef & ref);

struct LinearFit
{
  double slope{0.0};
  double intercept{0.0};
};

/// Ordinary least squares meas ~ slope * ref + intercept.
LinearFit linear_fit(const SeriesRef & meas, const SeriesRef & ref);

/// mean|meas - fit| / max|fit| for the OLS line. Throws when ref is constant.
double nonlinearity_error(const SeriesRef & meas, const SeriesRef & ref);

/// Loading and unloading branches resampled on a common reference grid.
struct HysteresisBranches
{
  Eigen::VectorXd grid;
  Eigen::VectorXd loading;
  Eigen::VectorXd unloading;
};

HysteresisBranches hysteresis_branches(const SeriesRef & meas, const SeriesRef & ref, int grid_points = 50);

/// 0.5 * max|loading - unloading| / max_abs_meas.
double hysteresis_error(const SeriesRef & loading, const SeriesRef & unloading, double max_abs_meas);

double hysteresis_error(const SeriesRef & meas, const SeriesRef & ref, int grid_points = 50);

/// mean|meas| of an unloaded series over full scale; reported as +/- value.
double drift_error(const SeriesRef & unloaded_meas, double full_scale);

/// sqrt(rep^2 + nlin^2 + hys^2).
double accuracy_error(double repeatability, double nonlinearity, double hysteresis);

/// Least-squares line through the origin with a 95% slope interval.
struct ZeroInterceptFit
{
  double slope{0.0};
  double ci_low{0.0};
  double ci_high{0.0};
  double r_squared{0.0};
  Eigen::Index samples{0};
};

ZeroInterceptFit zero_intercept_regression(const SeriesRef & meas, const SeriesRef & ref);

struct AxisReport
{
  std::optional<double> deviation;
  std::optional<double> repeatability;
  std::optional<double> nonlinearity;
  std::optional<double> hysteresis;
  std::optional<double> drift;
  std::optional<double> accuracy;
  std::optional<ZeroInterceptFit> regression;
};

struct EvalReport
{
  std::array<AxisReport, kAxes> axes{};

  AxisReport & axis(Axis a) {return axes[static_cast<std::size_t>(index(a))];}
  const AxisReport & axis(Axis a) const {return axes[static_cast<std::size_t>(index(a))];}
};

struct EvalOptions
{
  Capacity capacity{};
  /// Reference magnitude (fraction of full scale) treated as unloaded.
  double unloaded_fraction{0.01};
  int hysteresis_grid{50};
};

/**
 * Evaluate every axis of a measured wrench series against its reference.
 *
 * Drift is taken over the samples where every reference axis is within
 * unloaded_fraction of full scale, on meas - ref so that a residual
 * reference reading is not counted as drift. Metrics that an axis' data
 * cannot support (no load, a single cycle, no unloaded samples) are left
 * empty.
 */
EvalReport evaluate(const WrenchRows & meas, const WrenchRows & ref, const EvalOptions & options = {});

}  // namespace hexwrench

#endif  // HEXWRENCH__EVALUATION_HPP_
