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

#include "hexwrench/sysid.hpp"

#include "hexwrench/signal_sim.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>

namespace hexwrench
{

namespace
{

constexpr double kTauMin = 1e-6;
constexpr double kTauMax = 10.0;
constexpr int kScanPoints = 161;
constexpr double kTauTolerance = 1e-10;

struct Candidate
{
  double tau;
  double gain;
  double sse;
};

Candidate evaluate_tau(
  const Eigen::Ref<const Eigen::VectorXd> & input,
  const Eigen::Ref<const Eigen::VectorXd> & output,
  double tau, double dt)
{
  const Eigen::VectorXd y = apply_dynamics(input, tau, dt);
  const double yy = y.squaredNorm();
  const double gain = yy > 0.0 ? y.dot(output) / yy : 0.0;
  return {tau, gain, (output - gain * y).squaredNorm()};
}

}  // namespace

FirstOrderFit fit_first_order(
  const Eigen::Ref<const Eigen::VectorXd> & input,
  const Eigen::Ref<const Eigen::VectorXd> & output,
  double dt)
{
  if (input.size() != output.size()) {throw Error("input and output series differ in length");}
  if (input.size() < 2) {throw Error("system identification needs at least two samples");}
  if (!(dt > 0.0)) {throw Error("sample interval must be positive");}
  if (!input.allFinite() || !output.allFinite()) {throw Error("non-finite samples in identification data");}
  if (input.maxCoeff() == input.minCoeff()) {throw Error("constant input is not persistently exciting");}

  std::vector<Candidate> scan;
  scan.push_back(evaluate_tau(input, output, 0.0, dt));
  const double step = std::log(kTauMax / kTauMin) / (kScanPoints - 1);
  for (int i = 0; i < kScanPoints; ++i) {
    scan.push_back(evaluate_tau(input, output, kTauMin * std::exp(step * i), dt));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (scan[i].sse < scan[best].sse) {best = i;}
  }

  double a = best == 0 ? 0.0 : scan[best - 1].tau;
  double b = best + 1 < scan.size() ? scan[best + 1].tau : scan[best].tau;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  Candidate fc = evaluate_tau(input, output, c, dt);
  Candidate fd = evaluate_tau(input, output, d, dt);
  while (b - a > kTauTolerance) {
    if (fc.sse <= fd.sse) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = evaluate_tau(input, output, c, dt);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = evaluate_tau(input, output, d, dt);
    }
  }
  Candidate pick = fc.sse <= fd.sse ? fc : fd;
  if (scan[best].sse < pick.sse) {pick = scan[best];}

  FirstOrderFit fit;
  fit.gain = pick.gain;
  fit.tau = pick.tau;
  fit.fit_rms = std::sqrt(pick.sse / static_cast<double>(input.size()));
  return fit;
}

std::vector<BodePoint> bode_points(double gain, double tau, const std::vector<double> & frequencies)
{
  const double two_pi = boost::math::constants::two_pi<double>();
  std::vector<BodePoint> out;
  out.reserve(frequencies.size());
  for (double f : frequencies) {
    if (!(f > 0.0)) {throw Error("Bode frequencies must be positive");}
    const double wt = two_pi * f * tau;
    out.push_back({f, 20.0 * std::log10(gain / std::sqrt(1.0 + wt * wt)),
        -std::atan(wt) * 180.0 / boost::math::constants::pi<double>()});
  }
  return out;
}

std::vector<double> log_frequencies(double f_lo, double f_hi, int n)
{
  if (!(f_lo > 0.0) || !(f_hi > f_lo) || n < 2) {throw Error("invalid frequency range");}
  std::vector<double> f(static_cast<std::size_t>(n));
  const double step = std::log10(f_hi / f_lo) / (n - 1);
  for (int i = 0; i < n; ++i) {f[static_cast<std::size_t>(i)] = f_lo * std::pow(10.0, step * i);}
  f.back() = f_hi;
  return f;
}

double corner_frequency(double tau)
{
  if (!(tau > 0.0)) {throw Error("corner frequency needs tau > 0");}
  return 1.0 / (boost::math::constants::two_pi<double>() * tau);
}

std::array<std::optional<FirstOrderFit>, kAxes> fit_wrench_dynamics(
  const WrenchRows & input, const WrenchRows & output, double dt)
{
  if (input.rows() != output.rows()) {throw Error("input and output series differ in length");}
  std::array<std::optional<FirstOrderFit>, kAxes> fits;
  for (Axis a : kAllAxes) {
    const Eigen::VectorXd x = input.col(index(a));
    if (x.size() < 2 || x.maxCoeff() == x.minCoeff()) {continue;}
    fits[static_cast<std::size_t>(index(a))] = fit_first_order(x, output.col(index(a)), dt);
  }
  return fits;
}

}  // namespace hexwrench
