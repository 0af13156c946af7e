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

// Loop-by-loop re-implementation of the error metrics over std::vector,
// written from the metric definitions without sharing library code.

#ifndef HEXWRENCH_TESTS__BRUTE_FORCE_METRICS_HPP_
#define HEXWRENCH_TESTS__BRUTE_FORCE_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace hexwrench::testing::brute
{

using Series = std::vector<double>;

inline double max_abs(const Series & v)
{
  double m = 0.0;
  for (double x : v) {
    if (std::fabs(x) > m) {m = std::fabs(x);}
  }
  return m;
}

inline double deviation(const Series & meas, const Series & ref)
{
  double s = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {s += std::fabs(meas[i] - ref[i]);}
  return s / (static_cast<double>(ref.size()) * max_abs(ref));
}

inline double direction(const Series & ref)
{
  const double peak = max_abs(ref);
  for (double x : ref) {
    if (std::fabs(x) > peak / 2.0) {return x > 0.0 ? 1.0 : -1.0;}
  }
  return 1.0;
}

inline std::vector<std::size_t> starts(const Series & ref)
{
  const double peak = max_abs(ref);
  const double s = direction(ref);
  std::vector<std::size_t> out;
  std::size_t i = 0;
  const std::size_t n = ref.size();
  // wait for the first drop to <= 10%
  while (i < n && s * ref[i] > 0.1 * peak) {++i;}
  while (i < n) {
    // window of samples from the drop until the rise above 50%
    const std::size_t window_begin = i;
    while (i < n && !(s * ref[i] > 0.5 * peak)) {++i;}
    if (i == n) {break;}
    long last_near_zero = -1;
    std::size_t lowest = window_begin;
    for (std::size_t k = window_begin; k < i; ++k) {
      if (s * ref[k] <= 0.01 * peak) {last_near_zero = static_cast<long>(k);}
      if (s * ref[k] < s * ref[lowest]) {lowest = k;}
    }
    out.push_back(last_near_zero >= 0 ? static_cast<std::size_t>(last_near_zero) : lowest);
    while (i < n && s * ref[i] > 0.1 * peak) {++i;}
  }
  return out;
}

inline double repeatability(const Series & meas, const Series & ref)
{
  const auto st = starts(ref);
  std::size_t len = ref.size();
  for (std::size_t j = 0; j < st.size(); ++j) {
    const std::size_t end = j + 1 < st.size() ? st[j + 1] : ref.size();
    len = std::min(len, end - st[j]);
  }
  double total = 0.0;
  double count = 0.0;
  for (std::size_t j = 0; j + 1 < st.size(); ++j) {
    for (std::size_t k = 0; k < len; ++k) {
      total += std::fabs(meas[st[j] + k] - meas[st[j + 1] + k]);
      count += 1.0;
    }
  }
  return total / (2.0 * count) / max_abs(ref);
}

inline double nonlinearity(const Series & meas, const Series & ref)
{
  const double n = static_cast<double>(ref.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    mx += ref[i];
    my += meas[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    sxy += (ref[i] - mx) * (meas[i] - my);
    sxx += (ref[i] - mx) * (ref[i] - mx);
  }
  const double slope = sxy / sxx;
  const double icpt = my - slope * mx;
  double res = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double fit = slope * ref[i] + icpt;
    res += std::fabs(meas[i] - fit);
    peak = std::max(peak, std::fabs(fit));
  }
  return res / n / peak;
}

inline double hysteresis(const Series & meas, const Series & ref, int grid)
{
  using Piece = std::vector<std::pair<double, double>>;
  const double s = direction(ref);
  const double peak = max_abs(ref);
  const auto st = starts(ref);
  std::vector<Piece> up;
  std::vector<Piece> down;
  for (std::size_t j = 0; j < st.size(); ++j) {
    const std::size_t end = j + 1 < st.size() ? st[j + 1] : ref.size();
    std::size_t top = st[j];
    for (std::size_t k = st[j]; k < end; ++k) {
      if (s * ref[k] > s * ref[top]) {top = k;}
    }
    Piece a;
    for (std::size_t k = st[j]; k <= top; ++k) {a.push_back({ref[k], meas[k]});}
    Piece b;
    for (std::size_t k = top; k < end; ++k) {
      b.push_back({ref[k], meas[k]});
      if (k > top && s * ref[k] <= 0.01 * peak) {break;}
    }
    // insertion sort keeps equal keys in time order
    for (Piece * p : {&a, &b}) {
      for (std::size_t x = 1; x < p->size(); ++x) {
        for (std::size_t y = x; y > 0 && (*p)[y].first < (*p)[y - 1].first; --y) {
          std::swap((*p)[y], (*p)[y - 1]);
        }
      }
    }
    up.push_back(a);
    down.push_back(b);
  }
  auto span = [](const std::vector<Piece> & ps) {
      double lo = INFINITY;
      double hi = -INFINITY;
      for (const auto & p : ps) {
        if (p.size() < 2) {continue;}
        lo = std::min(lo, p.front().first);
        hi = std::max(hi, p.back().first);
      }
      return std::make_pair(lo, hi);
    };
  const auto su = span(up);
  const auto sd = span(down);
  const double lo = std::max(su.first, sd.first);
  const double hi = std::min(su.second, sd.second);
  auto value = [](const std::vector<Piece> & ps, double g, bool & ok) {
      double sum = 0.0;
      int used = 0;
      for (const auto & p : ps) {
        if (p.empty() || g < p.front().first || g > p.back().first) {continue;}
        std::size_t k = 0;
        while (p[k].first < g) {++k;}
        double v;
        if (k == 0) {
          v = p[0].second;
        } else {
          const double dx = p[k].first - p[k - 1].first;
          v = dx > 0.0 ? p[k - 1].second + (g - p[k - 1].first) / dx * (p[k].second - p[k - 1].second) :
            p[k].second;
        }
        sum += v;
        ++used;
      }
      ok = used > 0;
      return ok ? sum / used : 0.0;
    };
  double gap = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double g = i == grid - 1 ? hi : lo + (hi - lo) * i / (grid - 1);
    bool ok_u = false;
    bool ok_d = false;
    const double vu = value(up, g, ok_u);
    const double vd = value(down, g, ok_d);
    if (ok_u && ok_d) {gap = std::max(gap, std::fabs(vu - vd));}
  }
  return 0.5 * gap / max_abs(meas);
}

inline double drift(const Series & unloaded, double full_scale)
{
  double s = 0.0;
  for (double x : unloaded) {s += std::fabs(x);}
  return s / static_cast<double>(unloaded.size()) / full_scale;
}

}  // namespace hexwrench::testing::brute

#endif  // HEXWRENCH_TESTS__BRUTE_FORCE_METRICS_HPP_
