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

#include "hexwrench/evaluation.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hexwrench
{

namespace
{

void require_pair(const SeriesRef & meas, const SeriesRef & ref)
{
  if (meas.size() != ref.size()) {throw Error("measured and reference series differ in length");}
  if (meas.size() == 0) {throw Error("empty series");}
}

double loading_sign(const SeriesRef & ref)
{
  const double peak = ref.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ref.size(); ++i) {
    if (std::abs(ref(i)) > 0.5 * peak) {return ref(i) > 0.0 ? 1.0 : -1.0;}
  }
  return 1.0;
}

constexpr double kZeroLevel = 0.01;
constexpr double kArmLevel = 0.1;
constexpr double kRiseLevel = 0.5;

struct Piece
{
  Eigen::Index begin;
  Eigen::Index end;  // exclusive
};

/// Linear interpolation of meas(u) at g on a piece sorted by u; nullopt outside.
std::optional<double> interpolate(
  const std::vector<std::pair<double, double>> & sorted, double g)
{
  if (sorted.empty() || g < sorted.front().first || g > sorted.back().first) {return std::nullopt;}
  auto hi = std::lower_bound(
    sorted.begin(), sorted.end(), g,
    [](const auto & p, double v) {return p.first < v;});
  if (hi == sorted.begin()) {return hi->second;}
  auto lo = std::prev(hi);
  const double span = hi->first - lo->first;
  if (span <= 0.0) {return hi->second;}
  const double w = (g - lo->first) / span;
  return lo->second + w * (hi->second - lo->second);
}

}  // namespace

double deviation_rate(const SeriesRef & meas, const SeriesRef & ref)
{
  require_pair(meas, ref);
  const double peak = ref.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) {throw Error("deviation rate undefined for an all-zero reference");}
  return (meas - ref).cwiseAbs().sum() / (static_cast<double>(ref.size()) * peak);
}

std::vector<Eigen::Index> cycle_starts(const SeriesRef & ref)
{
  std::vector<Eigen::Index> starts;
  if (ref.size() == 0) {return starts;}
  const double peak = ref.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) {return starts;}
  const double sign = loading_sign(ref);
  const double zero = kZeroLevel * peak;
  const double low = kArmLevel * peak;
  const double high = kRiseLevel * peak;

  bool armed = false;
  Eigen::Index lowest = 0;
  std::optional<Eigen::Index> last_zero;
  for (Eigen::Index i = 0; i < ref.size(); ++i) {
    const double u = sign * ref(i);
    if (armed) {
      if (u < sign * ref(lowest)) {lowest = i;}
      if (u <= zero) {last_zero = i;}
      if (u > high) {
        starts.push_back(last_zero.value_or(lowest));
        armed = false;
      }
    } else if (u <= low) {
      armed = true;
      lowest = i;
      last_zero.reset();
      if (u <= zero) {last_zero = i;}
    }
  }
  return starts;
}

double repeatability_error(const SeriesRef & meas, const SeriesRef & ref)
{
  require_pair(meas, ref);
  const auto starts = cycle_starts(ref);
  if (starts.size() < 2) {throw Error("repeatability needs at least two load cycles");}
  std::vector<Eigen::Index> ends(starts.begin() + 1, starts.end());
  ends.push_back(ref.size());
  Eigen::Index shortest = ref.size();
  for (std::size_t j = 0; j < starts.size(); ++j) {
    shortest = std::min(shortest, ends[j] - starts[j]);
  }
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < starts.size(); ++j) {
    sum += (meas.segment(starts[j], shortest) - meas.segment(starts[j + 1], shortest)).cwiseAbs().sum();
  }
  const double pairs = static_cast<double>(starts.size() - 1) * static_cast<double>(shortest);
  return sum / (2.0 * pairs) / ref.cwiseAbs().maxCoeff();
}

LinearFit linear_fit(const SeriesRef & meas, const SeriesRef & ref)
{
  require_pair(meas, ref);
  const double mx = ref.mean();
  const double my = meas.mean();
  const Eigen::VectorXd dx = ref.array() - mx;
  const double sxx = dx.squaredNorm();
  if (!(sxx > 0.0)) {throw Error("regression undefined for a constant reference");}
  LinearFit f;
  f.slope = dx.dot((meas.array() - my).matrix()) / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

double nonlinearity_error(const SeriesRef & meas, const SeriesRef & ref)
{
  const LinearFit f = linear_fit(meas, ref);
  const Eigen::VectorXd fit = (f.slope * ref.array() + f.intercept).matrix();
  const double peak = fit.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) {throw Error("non-linearity undefined for an all-zero fit");}
  return (meas - fit).cwiseAbs().mean() / peak;
}

HysteresisBranches hysteresis_branches(const SeriesRef & meas, const SeriesRef & ref, int grid_points)
{
  require_pair(meas, ref);
  if (grid_points < 2) {throw Error("hysteresis grid needs at least two points");}
  const auto starts = cycle_starts(ref);
  if (starts.empty()) {throw Error("hysteresis needs at least one load cycle");}
  const double sign = loading_sign(ref);
  const double ref_peak = ref.cwiseAbs().maxCoeff();

  std::vector<Piece> loading;
  std::vector<Piece> unloading;
  for (std::size_t j = 0; j < starts.size(); ++j) {
    const Eigen::Index b = starts[j];
    const Eigen::Index e = j + 1 < starts.size() ? starts[j + 1] : ref.size();
    Eigen::Index peak = b;
    for (Eigen::Index i = b; i < e; ++i) {
      if (sign * ref(i) > sign * ref(peak)) {peak = i;}
    }
    Eigen::Index unload_end = peak + 1;
    while (unload_end < e && sign * ref(unload_end - 1) > kZeroLevel * ref_peak) {++unload_end;}
    loading.push_back({b, peak + 1});
    unloading.push_back({peak, unload_end});
  }

  auto sorted_piece = [&](const Piece & p) {
      std::vector<std::pair<double, double>> v;
      for (Eigen::Index i = p.begin; i < p.end; ++i) {v.emplace_back(ref(i), meas(i));}
      std::stable_sort(v.begin(), v.end(), [](const auto & a, const auto & b) {return a.first < b.first;});
      return v;
    };
  std::vector<std::vector<std::pair<double, double>>> load_sorted;
  std::vector<std::vector<std::pair<double, double>>> unload_sorted;
  for (const auto & p : loading) {load_sorted.push_back(sorted_piece(p));}
  for (const auto & p : unloading) {unload_sorted.push_back(sorted_piece(p));}

  auto range = [](const auto & pieces) {
      double lo = INFINITY;
      double hi = -INFINITY;
      for (const auto & v : pieces) {
        if (v.size() < 2) {continue;}
        lo = std::min(lo, v.front().first);
        hi = std::max(hi, v.back().first);
      }
      return std::pair{lo, hi};
    };
  const auto [load_lo, load_hi] = range(load_sorted);
  const auto [unload_lo, unload_hi] = range(unload_sorted);
  const double lo = std::max(load_lo, unload_lo);
  const double hi = std::min(load_hi, unload_hi);
  if (!(hi > lo)) {throw Error("loading and unloading branches do not overlap in force range");}

  HysteresisBranches out;
  out.grid = Eigen::VectorXd::LinSpaced(grid_points, lo, hi);
  out.loading.resize(grid_points);
  out.unloading.resize(grid_points);
  auto average = [](const auto & pieces, double g) -> std::optional<double> {
      double sum = 0.0;
      int count = 0;
      for (const auto & v : pieces) {
        if (auto y = interpolate(v, g)) {
          sum += *y;
          ++count;
        }
      }
      if (count == 0) {return std::nullopt;}
      return sum / count;
    };
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < grid_points; ++i) {
    const auto l = average(load_sorted, out.grid(i));
    const auto u = average(unload_sorted, out.grid(i));
    if (!l || !u) {continue;}
    out.grid(kept) = out.grid(i);
    out.loading(kept) = *l;
    out.unloading(kept) = *u;
    ++kept;
  }
  if (kept == 0) {throw Error("loading and unloading branches do not overlap in force range");}
  out.grid.conservativeResize(kept);
  out.loading.conservativeResize(kept);
  out.unloading.conservativeResize(kept);
  return out;
}

double hysteresis_error(const SeriesRef & loading, const SeriesRef & unloading, double max_abs_meas)
{
  if (loading.size() != unloading.size() || loading.size() == 0) {
    throw Error("hysteresis branches must be non-empty and resampled on the same grid");
  }
  if (!(max_abs_meas > 0.0)) {throw Error("hysteresis undefined for an all-zero measurement");}
  return 0.5 * (loading - unloading).cwiseAbs().maxCoeff() / max_abs_meas;
}

double hysteresis_error(const SeriesRef & meas, const SeriesRef & ref, int grid_points)
{
  const HysteresisBranches b = hysteresis_branches(meas, ref, grid_points);
  return hysteresis_error(b.loading, b.unloading, meas.cwiseAbs().maxCoeff());
}

double drift_error(const SeriesRef & unloaded_meas, double full_scale)
{
  if (unloaded_meas.size() == 0) {throw Error("drift needs at least one unloaded sample");}
  if (!(full_scale > 0.0)) {throw Error("full scale must be positive");}
  return unloaded_meas.cwiseAbs().mean() / full_scale;
}

double accuracy_error(double repeatability, double nonlinearity, double hysteresis)
{
  if (repeatability < 0.0 || nonlinearity < 0.0 || hysteresis < 0.0) {
    throw Error("accuracy inputs must be non-negative");
  }
  return std::sqrt(
    repeatability * repeatability + nonlinearity * nonlinearity + hysteresis * hysteresis);
}

ZeroInterceptFit zero_intercept_regression(const SeriesRef & meas, const SeriesRef & ref)
{
  require_pair(meas, ref);
  const Eigen::Index n = ref.size();
  if (n < 3) {throw Error("zero-intercept regression needs at least three points");}
  const double sxx = ref.squaredNorm();
  if (!(sxx > 0.0)) {throw Error("zero-intercept regression undefined: sum of x^2 is zero");}

  ZeroInterceptFit fit;
  fit.samples = n;
  fit.slope = ref.dot(meas) / sxx;
  const double ss_res = (meas - fit.slope * ref).squaredNorm();
  const double ss_tot = (meas.array() - meas.mean()).matrix().squaredNorm();
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);

  const double dof = static_cast<double>(n - 1);
  const double se = std::sqrt(ss_res / dof / sxx);
  const boost::math::students_t dist(dof);
  const double t = boost::math::quantile(dist, 0.975);
  fit.ci_low = fit.slope - t * se;
  fit.ci_high = fit.slope + t * se;
  return fit;
}

EvalReport evaluate(const WrenchRows & meas, const WrenchRows & ref, const EvalOptions & options)
{
  if (meas.rows() != ref.rows()) {throw Error("measured and reference series differ in length");}
  EvalReport report;

  std::vector<Eigen::Index> unloaded;
  for (Eigen::Index i = 0; i < ref.rows(); ++i) {
    bool quiet = true;
    for (Axis a : kAllAxes) {
      quiet = quiet &&
        std::abs(ref(i, index(a))) <= options.unloaded_fraction * options.capacity.full_scale(a);
    }
    if (quiet) {unloaded.push_back(i);}
  }

  for (Axis a : kAllAxes) {
    AxisReport & r = report.axis(a);
    const Eigen::VectorXd m = meas.col(index(a));
    const Eigen::VectorXd f = ref.col(index(a));
    const double fs = options.capacity.full_scale(a);

    if (!unloaded.empty()) {
      Eigen::VectorXd quiet(static_cast<Eigen::Index>(unloaded.size()));
      for (std::size_t j = 0; j < unloaded.size(); ++j) {
        quiet(static_cast<Eigen::Index>(j)) = m(unloaded[j]) - f(unloaded[j]);
      }
      r.drift = drift_error(quiet, fs);
    }
    if (f.size() == 0 || !(f.cwiseAbs().maxCoeff() > options.unloaded_fraction * fs)) {continue;}

    r.deviation = deviation_rate(m, f);
    auto attempt = [](auto && fn) -> std::optional<double> {
        try {
          return fn();
        } catch (const Error &) {
          return std::nullopt;
        }
      };
    r.nonlinearity = attempt([&] {return nonlinearity_error(m, f);});
    r.repeatability = attempt([&] {return repeatability_error(m, f);});
    r.hysteresis = attempt([&] {return hysteresis_error(m, f, options.hysteresis_grid);});
    if (r.repeatability && r.nonlinearity && r.hysteresis) {
      r.accuracy = accuracy_error(*r.repeatability, *r.nonlinearity, *r.hysteresis);
    }
    if (f.size() >= 3) {r.regression = zero_intercept_regression(m, f);}
  }
  return report;
}

}  // namespace hexwrench
