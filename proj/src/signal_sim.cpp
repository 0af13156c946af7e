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

#include "hexwrench/signal_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace hexwrench
{

namespace
{

double triangle(double frac, bool bipolar)
{
  if (!bipolar) {
    return 1.0 - std::abs(2.0 * frac - 1.0);
  }
  // 0 -> 1 -> 0 -> -1 -> 0
  if (frac < 0.5) {return 1.0 - std::abs(4.0 * frac - 1.0);}
  return -(1.0 - std::abs(4.0 * (frac - 0.5) - 1.0));
}

Eigen::VectorXd render(const Waveform & w, const Eigen::VectorXd & t, double start, double end)
{
  Eigen::VectorXd out = Eigen::VectorXd::Zero(t.size());
  switch (w.kind) {
    case WaveformKind::None:
      break;
    case WaveformKind::Ramp: {
        if (w.cycles < 1) {throw Error("ramp waveform needs at least one cycle");}
        const double period = w.frequency > 0.0 ? 1.0 / w.frequency : (end - start) / w.cycles;
        const double stop = start + period * w.cycles;
        for (Eigen::Index i = 0; i < t.size(); ++i) {
          if (t(i) < start || t(i) >= stop) {continue;}
          const double cyc = (t(i) - start) / period;
          out(i) = w.amplitude * triangle(cyc - std::floor(cyc), w.bipolar);
        }
        break;
      }
    case WaveformKind::Sine:
      for (Eigen::Index i = 0; i < t.size(); ++i) {
        if (t(i) < start) {continue;}
        out(i) = w.offset + w.amplitude *
          std::sin(2.0 * std::numbers::pi * w.frequency * (t(i) - start) + w.phase);
      }
      break;
    case WaveformKind::RandomWalk: {
        std::mt19937_64 rng(w.seed);
        std::normal_distribution<double> step(0.0, w.step_std);
        const double bound = std::abs(w.amplitude);
        double x = 0.0;
        for (Eigen::Index i = 0; i < t.size(); ++i) {
          if (t(i) < start) {continue;}
          x += step(rng);
          // reflect into [-bound, bound]
          while (bound > 0.0 && std::abs(x) > bound) {
            x = x > 0.0 ? 2.0 * bound - x : -2.0 * bound - x;
          }
          out(i) = x;
        }
        break;
      }
  }
  return out;
}

}  // namespace

LoadProfile generate_profile(const ProfileSpec & spec)
{
  if (!(spec.sample_rate > 0.0) || !(spec.duration > 0.0) || spec.lead_in < 0.0) {
    throw Error("profile needs positive sample rate and duration and non-negative lead-in");
  }
  const auto n = static_cast<Eigen::Index>(std::llround(spec.duration * spec.sample_rate));
  LoadProfile p;
  p.sample_rate = spec.sample_rate;
  p.t.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p.t(i) = static_cast<double>(i) / spec.sample_rate;
  }
  p.wrench.resize(n, kAxes);
  for (Axis a : kAllAxes) {
    const Waveform & w = spec.axis(a);
    const double start = spec.lead_in + w.delay;
    p.wrench.col(index(a)) = render(w, p.t, start, spec.duration);
    const double limit = spec.capacity.full_scale(a);
    const double peak = n > 0 ? p.wrench.col(index(a)).cwiseAbs().maxCoeff() : 0.0;
    if (peak > limit * (1.0 + 1e-12)) {
      throw CapacityError(
        a, "axis " + std::string(axis_name(a)) + " exceeds capacity: peak " +
        std::to_string(peak) + " > " + std::to_string(limit));
    }
  }
  return p;
}

Eigen::VectorXd apply_hysteresis(const Eigen::Ref<const Eigen::VectorXd> & series, double play)
{
  if (play < 0.0) {throw Error("hysteresis play must be non-negative");}
  Eigen::VectorXd y(series.size());
  if (series.size() == 0) {return y;}
  double state = series(0);
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    state = std::clamp(state, series(i) - play, series(i) + play);
    y(i) = state;
  }
  return y;
}

Eigen::VectorXd apply_dynamics(const Eigen::Ref<const Eigen::VectorXd> & series, double tau, double dt)
{
  if (tau < 0.0 || !(dt > 0.0)) {throw Error("lag needs tau >= 0 and dt > 0");}
  Eigen::VectorXd y(series.size());
  if (series.size() == 0) {return y;}
  const double gain = dt / (tau + dt);
  double state = series(0);
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    state += gain * (series(i) - state);
    y(i) = state;
  }
  return y;
}

SimLog simulate(const LoadProfile & profile, const SensorModeld & model, const NoiseConfig & noise)
{
  if (noise.hysteresis_play < 0.0 || noise.gaussian_std < 0.0 || noise.drift_rw_std < 0.0 ||
    noise.quant_step < 0.0)
  {
    throw Error("noise parameters must be non-negative");
  }
  const Eigen::Index n = profile.size();
  const double dt = 1.0 / profile.sample_rate;

  WrenchRows lagged = profile.wrench;
  for (int a = 0; a < kAxes; ++a) {
    const double tau = noise.lag_tau[static_cast<std::size_t>(a)];
    if (tau > 0.0) {lagged.col(a) = apply_dynamics(profile.wrench.col(a), tau, dt);}
  }

  PressureRows dp(n, kChannels);
  for (Eigen::Index i = 0; i < n; ++i) {
    dp.row(i) = pressure_response<double>(lagged.row(i).transpose(), model).transpose();
  }

  if (noise.hysteresis_play > 0.0) {
    for (int c = 0; c < kChannels; ++c) {
      dp.col(c) = apply_hysteresis(dp.col(c), noise.hysteresis_play);
    }
  }

  if (noise.gaussian_std > 0.0 || noise.drift_rw_std > 0.0) {
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    PressureVectord drift = PressureVectord::Zero();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int c = 0; c < kChannels; ++c) {
        const double white = unit(rng);
        drift(c) += noise.drift_rw_std * unit(rng);
        dp(i, c) += noise.gaussian_std * white + drift(c);
      }
    }
  }

  if (noise.quant_step > 0.0) {
    dp = (dp / noise.quant_step).array().round().matrix() * noise.quant_step;
  }

  SimLog log;
  log.sample_rate = profile.sample_rate;
  log.t = profile.t;
  log.wrench = profile.wrench;
  log.pressure = dp.rowwise() + model.gas.p0.transpose();
  log.metadata.seed = noise.seed;
  return log;
}

std::string fnv1a_hex(const std::string & bytes)
{
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hexwrench
