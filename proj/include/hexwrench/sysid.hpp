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

#ifndef HEXWRENCH__SYSID_HPP_
#define HEXWRENCH__SYSID_HPP_

#include "hexwrench/types.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <vector>

namespace hexwrench
{

/// G(s) = gain / (tau s + 1).
struct FirstOrderFit
{
  double gain{1.0};
  double tau{0.0};
  double fit_rms{0.0};
};

/**
 * Output-error fit of a first-order lag using the same discrete recurrence
 * as apply_dynamics. The gain is solved in closed form for each candidate
 * tau; tau is found by a log-spaced scan refined with golden-section search.
 *
 * Throws on length mismatch, dt <= 0, non-finite samples or constant input.
 */
FirstOrderFit fit_first_order(
  const Eigen::Ref<const Eigen::VectorXd> & input,
  const Eigen::Ref<const Eigen::VectorXd> & output,
  double dt);

struct BodePoint
{
  double frequency{0.0};     // Hz
  double magnitude_db{0.0};
  double phase_deg{0.0};
};

std::vector<BodePoint> bode_points(double gain, double tau, const std::vector<double> & frequencies);

/// n log-spaced frequencies from f_lo to f_hi inclusive.
std::vector<double> log_frequencies(double f_lo, double f_hi, int n);

/// Corner frequency 1 / (2 pi tau), Hz.
double corner_frequency(double tau);

/// Identified channels of the reference prototype, canonical axis order.
inline constexpr std::array<FirstOrderFit, kAxes> kPrototypeTransferFunctions{{
  {0.9879, 0.0036, 0.0},
  {0.9761, 0.0038, 0.0},
  {0.9815, 0.0018, 0.0},
  {1.007, 0.0033, 0.0},
  {0.9899, 0.0026, 0.0},
  {0.9488, 0.0049, 0.0},
}};

/// Per-axis fits of a measured wrench series against its input series.
std::array<std::optional<FirstOrderFit>, kAxes> fit_wrench_dynamics(
  const WrenchRows & input, const WrenchRows & output, double dt);

}  // namespace hexwrench

#endif  // HEXWRENCH__SYSID_HPP_
