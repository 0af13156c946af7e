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

// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "brute_force_metrics.hpp"
#include "fixtures.hpp"

#include "hexwrench/calibration.hpp"
#include "hexwrench/core_model.hpp"
#include "hexwrench/decoupler.hpp"
#include "hexwrench/evaluation.hpp"
#include "hexwrench/signal_sim.hpp"
#include "hexwrench/sysid.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

using namespace hexwrench;

namespace
{

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, const std::string & name, const std::string & detail)
{
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) {++failures;}
}

std::string fmt(const char * f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const SensorModeld & model()
{
  static const SensorModeld m = reference_sensor_model<double>();
  return m;
}

const SimLog & clean_log()
{
  static const SimLog log = testing::clean_log(model());
  return log;
}

const CalibrationResult & structured()
{
  static const CalibrationResult r = fit_structured(clean_log(), model().layout);
  return r;
}

double held_out_error(const DecouplingMatrix & k)
{
  std::mt19937_64 rng(2024);
  const Wrenchd fs = Capacity{}.as_wrench();
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Wrenchd w = testing::random_wrench(rng);
    const Wrenchd got = from_decoupling_order<double>(k * pressure_response<double>(w, model()));
    worst = std::max(worst, (got - w).cwiseQuotient(fs).cwiseAbs().maxCoeff());
  }
  return worst;
}

void superposition()
{
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Wrenchd a = testing::random_wrench(rng);
    const Wrenchd b = testing::random_wrench(rng);
    const PressureVectord pa = pressure_response<double>(a, model());
    const PressureVectord pb = pressure_response<double>(b, model());
    const PressureVectord pab = pressure_response<double>(Wrenchd(a + b), model());
    const double scale = std::max({pa.cwiseAbs().maxCoeff(), pb.cwiseAbs().maxCoeff(), pab.cwiseAbs().maxCoeff()});
    worst = std::max(worst, (pab - pa - pb).cwiseAbs().maxCoeff() / scale);
  }
  const double elapsed = seconds_since(start);
  report(worst < 1e-12 && elapsed < 1.0, "superposition",
    fmt("1000 pairs, max |dp(a+b)-dp(a)-dp(b)| = %.3e of max|dp| (limit 1e-12), %.3f s (limit 1 s)", worst, elapsed));
}

void layer_selectivity()
{
  std::mt19937_64 rng(2);
  int exact = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Wrenchd w = testing::random_wrench(rng);
    w(index(Axis::Fz)) = w(index(Axis::Tx)) = w(index(Axis::Ty)) = 0.0;
    const PressureVectord dp = pressure_response<double>(w, model());
    const double lower = dp.head<kChambersPerLayer>().cwiseAbs().maxCoeff();
    worst = std::max(worst, lower);
    if (lower == 0.0) {++exact;}
  }
  report(exact == 100, "layer selectivity",
    fmt("%d/100 in-plane wrenches leave the lower layer at exactly 0 Pa (max %.3e Pa)", exact, worst));
}

void calibration_recovery()
{
  const auto start = Clock::now();
  const SimLog log = testing::clean_log(model());
  const CalibrationResult s = fit_structured(log, model().layout);
  const CalibrationResult d = fit_dense(log);
  const CalibrationResult b = fit_block(log);
  const double elapsed = seconds_since(start);
  const double kappa = model().gas.kappa()(0);
  const Eigen::Matrix<double, 6, 1> truth = model().coupling.scalars.as_vector();
  const double scalar_err = (s.scalars->as_vector() / kappa - truth).cwiseQuotient(truth).cwiseAbs().maxCoeff();
  const double dense_err = held_out_error(d.k);
  const double block_err = held_out_error(b.k);
  report(scalar_err < 1e-9 && dense_err < 1e-8 && block_err < 1e-8 && elapsed < 5.0, "calibration recovery",
    fmt("structured scalars rel %.3e (limit 1e-9); held-out dense %.3e, block %.3e of FS (limit 1e-8); "
      "simulate + three fits %.3f s (limit 5 s)", scalar_err, dense_err, block_err, elapsed));
}

void degrees_of_freedom()
{
  const SimLog & log = clean_log();
  const std::size_t d = fit_dense(log).diagnostics.free_parameters;
  const std::size_t b = fit_block(log).diagnostics.free_parameters;
  const std::size_t s = structured().diagnostics.free_parameters;
  report(d == 96 && b == 72 && s == 6, "degrees of freedom",
    fmt("dense %zu (96), block %zu (72), structured %zu (6)", d, b, s));
}

void clean_pipeline()
{
  Decoupler dec(structured());
  const SimLog & log = clean_log();
  dec.tare(log.pressure.topRows(static_cast<Eigen::Index>(0.5 * log.sample_rate)));
  const DecodedStream out = dec.decouple_stream(log);
  const Wrenchd fs = Capacity{}.as_wrench();
  double worst = 0.0;
  for (Axis a : kAllAxes) {
    const int i = index(a);
    worst = std::max(worst, (out.wrench.col(i) - log.wrench.col(i)).cwiseAbs().maxCoeff() / fs(i));
  }
  report(out.rejected_rows.empty() && worst < 1e-9, "clean pipeline",
    fmt("simulate -> structured -> decouple, max per-axis error %.3e of FS (limit 1e-9)", worst));
}

std::vector<double> to_std(const Eigen::VectorXd & v) {return {v.data(), v.data() + v.size()};}

void metric_agreement()
{
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto [meas, ref] = testing::noisy_cycle_pair(rng);
    const auto m = to_std(meas);
    const auto r = to_std(ref);
    worst = std::max({worst,
        std::abs(deviation_rate(meas, ref) - testing::brute::deviation(m, r)),
        std::abs(repeatability_error(meas, ref) - testing::brute::repeatability(m, r)),
        std::abs(nonlinearity_error(meas, ref) - testing::brute::nonlinearity(m, r)),
        std::abs(hysteresis_error(meas, ref, 50) - testing::brute::hysteresis(m, r, 50)),
        std::abs(drift_error(meas.head(10), 50.0) - testing::brute::drift({m.begin(), m.begin() + 10}, 50.0))});
  }

  int reports = 0;
  int identity_failures = 0;
  auto check_identity = [&](const EvalReport & rep) {
      ++reports;
      for (const AxisReport & a : rep.axes) {
        if (!a.accuracy) {continue;}
        const double expect = std::sqrt(
          *a.repeatability * *a.repeatability + *a.nonlinearity * *a.nonlinearity + *a.hysteresis * *a.hysteresis);
        if (*a.accuracy != expect) {++identity_failures;}
      }
    };
  const LoadProfile p = generate_profile(testing::six_axis_ramps());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    NoiseConfig noise;
    noise.gaussian_std = 20.0;
    noise.hysteresis_play = 5.0;
    noise.seed = seed;
    const SimLog log = simulate(p, model(), noise);
    Decoupler dec(structured());
    dec.tare(log.pressure.topRows(512));
    check_identity(evaluate(dec.decouple_stream(log).wrench, log.wrench));
  }
  check_identity(evaluate(p.wrench, p.wrench));
  report(worst < 1e-12 && identity_failures == 0, "metric agreement",
    fmt("100 random series, max |library - brute force| = %.3e (limit 1e-12); "
      "%d accuracy identity mismatches across %d reports", worst, identity_failures, reports));
}

void noisy_ramps()
{
  const Wrenchd fs = Capacity{}.as_wrench();
  Decoupler dec(structured());
  std::array<LoadProfile, kAxes> profiles;
  std::array<double, kAxes> peak{};
  for (Axis a : kAllAxes) {
    ProfileSpec spec;
    spec.duration = 10.0;
    spec.lead_in = 1.0;
    Waveform & w = spec.axis(a);
    w.kind = WaveformKind::Ramp;
    w.amplitude = 0.8 * fs(index(a));
    w.cycles = 3;
    profiles[index(a)] = generate_profile(spec);
    const SimLog clean = simulate(profiles[index(a)], model(), NoiseConfig::none());
    peak[index(a)] = (clean.pressure.rowwise() - clean.pressure.row(0)).cwiseAbs().maxCoeff();
  }

  int passing_runs = 0;
  double slope_lo = 1e9;
  double slope_hi = -1e9;
  double r2_min = 1.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    bool ok = true;
    for (Axis a : kAllAxes) {
      NoiseConfig noise = NoiseConfig::none();
      noise.gaussian_std = 0.01 * peak[index(a)];
      noise.seed = seed * 16 + static_cast<std::uint64_t>(index(a));
      const SimLog log = simulate(profiles[index(a)], model(), noise);
      dec.tare(log.pressure.topRows(512));
      const DecodedStream out = dec.decouple_stream(log);
      const ZeroInterceptFit fit = zero_intercept_regression(out.wrench.col(index(a)), log.wrench.col(index(a)));
      slope_lo = std::min(slope_lo, fit.slope);
      slope_hi = std::max(slope_hi, fit.slope);
      r2_min = std::min(r2_min, fit.r_squared);
      ok = ok && fit.slope >= 0.98 && fit.slope <= 1.02 && fit.r_squared > 0.99;
    }
    if (ok) {++passing_runs;}
  }
  report(passing_runs >= 95, "noisy ramp regression",
    fmt("%d/100 seeded runs with all six slopes in [0.98, 1.02] and R^2 > 0.99 (need 95); "
      "slopes %.5f..%.5f, min R^2 %.6f", passing_runs, slope_lo, slope_hi, r2_min));
}

void prototype_dynamics()
{
  const double dt = 1.0 / 1024.0;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> step(0.0, 1.0);
  double worst_gain = 0.0;
  double worst_tau = 0.0;
  double tau_sum = 0.0;
  for (const FirstOrderFit & proto : kPrototypeTransferFunctions) {
    Eigen::VectorXd x(10240);
    double v = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      v += step(rng);
      x(i) = v;
    }
    const FirstOrderFit f = fit_first_order(x, proto.gain * apply_dynamics(x, proto.tau, dt), dt);
    worst_gain = std::max(worst_gain, std::abs(f.gain / proto.gain - 1.0));
    worst_tau = std::max(worst_tau, std::abs(f.tau / proto.tau - 1.0));
    tau_sum += f.tau;
  }
  const double mean_tau = tau_sum / kAxes;
  report(worst_gain < 0.01 && worst_tau < 0.01 && std::abs(mean_tau - 0.0034) < 1e-4, "prototype dynamics",
    fmt("six channels, 10 s at 1024 Hz: max gain error %.3e, max tau error %.3e (limit 1%%); "
      "mean tau %.5f s (expected 0.0034 +/- 0.0001)", worst_gain, worst_tau, mean_tau));
}

void rate_dependent_hysteresis()
{
  const Wrenchd fs = Capacity{}.as_wrench();
  const std::array<double, 3> freqs{0.2, 1.0, 5.0};
  const std::array<int, 3> cycles{3, 15, 75};
  std::array<std::array<double, 3>, kAxes> e{};
  Decoupler dec(structured());
  for (Axis a : kAllAxes) {
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      ProfileSpec spec;
      spec.duration = 17.0;
      spec.lead_in = 1.0;
      Waveform & w = spec.axis(a);
      w.kind = WaveformKind::Ramp;
      w.amplitude = 0.8 * fs(index(a));
      w.cycles = cycles[k];
      w.frequency = freqs[k];
      const LoadProfile p = generate_profile(spec);
      const SimLog clean = simulate(p, model(), NoiseConfig::none());
      const double peak = (clean.pressure.rowwise() - clean.pressure.row(0)).cwiseAbs().maxCoeff();
      NoiseConfig noise = NoiseConfig::none();
      for (std::size_t j = 0; j < kAxes; ++j) {noise.lag_tau[j] = kPrototypeTransferFunctions[j].tau;}
      noise.hysteresis_play = 0.01 * peak;
      noise.gaussian_std = 0.0005 * peak;
      noise.seed = 9;
      const SimLog log = simulate(p, model(), noise);
      dec.tare(log.pressure.topRows(512));
      const DecodedStream out = dec.decouple_stream(log);
      e[index(a)][k] = hysteresis_error(out.wrench.col(index(a)), log.wrench.col(index(a)));
    }
  }
  bool ok = true;
  std::string detail = "E_hys at 0.2/1/5 Hz:";
  for (Axis a : kAllAxes) {
    const auto & x = e[index(a)];
    ok = ok && x[0] <= x[1] && x[1] <= x[2];
    detail += fmt(" %s %.4f/%.4f/%.4f", std::string(axis_name(a)).c_str(), x[0], x[1], x[2]);
  }
  report(ok, "rate-dependent hysteresis", detail + " (must be non-decreasing)");
}

void throughput()
{
  const SimLog & log = clean_log();
  Decoupler dec(structured());
  dec.set_baseline(structured().baseline);
  const auto start = Clock::now();
  Eigen::Index rows = 0;
  double checksum = 0.0;
  while (seconds_since(start) < 0.5) {
    const DecodedStream out = dec.decouple_stream(log);
    rows += out.wrench.rows();
    checksum += out.wrench(0, 0);
  }
  const double rate = static_cast<double>(rows) / seconds_since(start);
  report(rate >= 2.0 * 10240.0 && std::isfinite(checksum), "decoupler throughput",
    fmt("%.0f rows/s (need 20480, twice the 10240 rows/s stream)", rate));
}

}  // namespace

int main()
{
  superposition();
  layer_selectivity();
  calibration_recovery();
  degrees_of_freedom();
  clean_pipeline();
  metric_agreement();
  noisy_ramps();
  prototype_dynamics();
  rate_dependent_hysteresis();
  throughput();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
