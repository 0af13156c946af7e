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

#ifndef HEXWRENCH__SIGNAL_SIM_HPP_
#define HEXWRENCH__SIGNAL_SIM_HPP_

#include "hexwrench/core_model.hpp"
#include "hexwrench/types.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string>

namespace hexwrench
{

using SensorModeld = SensorModel<double>;

enum class WaveformKind { None, Ramp, Sine, RandomWalk };

/**
 * Load waveform of one axis.
 *
 * Ramp: upload-download triangle 0 -> amplitude -> 0 (bipolar adds the
 * mirrored half). Runs `cycles` cycles spread over the active window, or at
 * `frequency` for `cycles` cycles when frequency > 0, then holds zero.
 * Sine: offset + amplitude * sin(2 pi f t + phase).
 * RandomWalk: Gaussian increments of step_std, reflected at +/-amplitude.
 * The waveform starts `delay` seconds after the profile lead-in.
 */
struct Waveform
{
  WaveformKind kind{WaveformKind::None};
  double amplitude{0.0};
  int cycles{1};
  bool bipolar{false};
  double frequency{0.0};
  double phase{0.0};
  double offset{0.0};
  double step_std{0.0};
  std::uint64_t seed{0};
  double delay{0.0};
};

struct ProfileSpec
{
  double sample_rate{1024.0};
  double duration{10.0};
  /// Unloaded interval at the start of the profile, seconds.
  double lead_in{0.0};
  std::array<Waveform, kAxes> axes{};
  Capacity capacity{};

  Waveform & axis(Axis a) {return axes[static_cast<std::size_t>(index(a))];}
  const Waveform & axis(Axis a) const {return axes[static_cast<std::size_t>(index(a))];}
};

struct LoadProfile
{
  double sample_rate{1024.0};
  Eigen::VectorXd t;
  WrenchRows wrench;

  Eigen::Index size() const {return t.size();}
};

/// Throws CapacityError naming the first axis whose samples exceed capacity.
LoadProfile generate_profile(const ProfileSpec & spec);

/// Pressure-channel imperfections, applied in the order listed.
struct NoiseConfig
{
  /// First-order lag time constant per wrench axis, seconds (0 = none).
  std::array<double, kAxes> lag_tau{};
  double hysteresis_play{0.0};   // Pa
  double gaussian_std{0.0};      // Pa
  double drift_rw_std{0.0};      // Pa per sqrt(sample)
  double quant_step{3.9};        // Pa, 0 disables
  std::uint64_t seed{0};

  static NoiseConfig none()
  {
    NoiseConfig n;
    n.quant_step = 0.0;
    return n;
  }
};

struct SimMetadata
{
  std::uint64_t seed{0};
  std::string model_hash;
};

/// Time-stamped pairs of reference wrench and absolute pressures.
struct SimLog
{
  double sample_rate{1024.0};
  Eigen::VectorXd t;
  WrenchRows wrench;
  PressureRows pressure;
  SimMetadata metadata;

  Eigen::Index size() const {return t.size();}
};

/**
 * Push a load profile through the forward model.
 *
 * p_abs = p0 + dp(wrench), where the wrench is first lagged per axis and dp
 * then passes through the play operator, Gaussian noise, random-walk drift
 * and quantisation to multiples of quant_step about p0. Deterministic given
 * noise.seed.
 */
SimLog simulate(const LoadProfile & profile, const SensorModeld & model, const NoiseConfig & noise);

/// Play (backlash) operator: y_t = clamp(y_{t-1}, x_t - play, x_t + play), y_{-1} = x_0.
Eigen::VectorXd apply_hysteresis(const Eigen::Ref<const Eigen::VectorXd> & series, double play);

/// Discrete first-order lag: y_t = y_{t-1} + dt/(tau+dt) * (x_t - y_{t-1}), y_{-1} = x_0.
Eigen::VectorXd apply_dynamics(const Eigen::Ref<const Eigen::VectorXd> & series, double tau, double dt);

/// Stable 64-bit FNV-1a hash as 16 hex digits.
std::string fnv1a_hex(const std::string & bytes);

}  // namespace hexwrench

#endif  // HEXWRENCH__SIGNAL_SIM_HPP_
