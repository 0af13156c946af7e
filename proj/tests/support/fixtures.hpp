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

#ifndef HEXWRENCH_TESTS__FIXTURES_HPP_
#define HEXWRENCH_TESTS__FIXTURES_HPP_

#include "hexwrench/calibration.hpp"
#include "hexwrench/signal_sim.hpp"

#include <cmath>
#include <random>
#include <utility>

namespace hexwrench::testing
{

/// Uniform wrench within +/- capacity on every axis.
inline Wrenchd random_wrench(std::mt19937_64 & rng, const Capacity & cap = {})
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Wrenchd w;
  for (Axis a : kAllAxes) {w(index(a)) = u(rng) * cap.full_scale(a);}
  return w;
}

/// All six axes ramped with distinct cycle counts after a 1 s unloaded lead-in.
inline ProfileSpec six_axis_ramps(double duration = 10.0, bool bipolar = true)
{
  ProfileSpec spec;
  spec.duration = duration;
  spec.lead_in = 1.0;
  const int cycles[kAxes] = {2, 3, 4, 6, 8, 9};
  for (Axis a : kAllAxes) {
    Waveform & w = spec.axis(a);
    w.kind = WaveformKind::Ramp;
    w.amplitude = 0.8 * spec.capacity.full_scale(a);
    w.cycles = cycles[index(a)];
    w.bipolar = bipolar;
  }
  return spec;
}

inline SimLog clean_log(const SensorModeld & model, double duration = 10.0)
{
  return simulate(generate_profile(six_axis_ramps(duration)), model, NoiseConfig::none());
}

inline Eigen::VectorXd triangle_cycles(double amplitude, int half_samples, int cycles)
{
  Eigen::VectorXd x(2 * half_samples * cycles + 1);
  Eigen::Index k = 0;
  for (int c = 0; c < cycles; ++c) {
    for (int i = 0; i < half_samples; ++i) {x(k++) = amplitude * i / half_samples;}
    for (int i = 0; i < half_samples; ++i) {x(k++) = amplitude - amplitude * i / half_samples;}
  }
  x(k) = 0.0;
  return x;
}

/// Ramped reference with a noisy, lagging, offset measurement.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> noisy_cycle_pair(std::mt19937_64 & rng)
{
  std::uniform_int_distribution<int> half(20, 80);
  std::uniform_int_distribution<int> cycles(2, 6);
  std::uniform_real_distribution<double> amp(0.5, 50.0);
  std::uniform_real_distribution<double> sign(-1.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double a = amp(rng) * (sign(rng) < 0.0 ? -1.0 : 1.0);
  const Eigen::VectorXd ref = triangle_cycles(a, half(rng), cycles(rng));
  const double level = 0.01 * std::abs(a);
  Eigen::VectorXd meas = apply_hysteresis(ref, 0.02 * std::abs(a));
  for (Eigen::Index i = 0; i < meas.size(); ++i) {
    meas(i) = 1.01 * meas(i) + 0.003 * a + level * noise(rng);
  }
  return {meas, ref};
}

}  // namespace hexwrench::testing

#endif  // HEXWRENCH_TESTS__FIXTURES_HPP_
