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

#include "fixtures.hpp"

#include "hexwrench/calibration.hpp"

#include <doctest.h>

using namespace hexwrench;

namespace
{

const SensorModeld & model()
{
  static const SensorModeld m = reference_sensor_model<double>();
  return m;
}

const SimLog & clean()
{
  static const SimLog log = testing::clean_log(model());
  return log;
}

/// Largest per-axis error over held-out random wrenches, relative to capacity.
double held_out_error(const DecouplingMatrix & k)
{
  std::mt19937_64 rng(77);
  const Capacity cap;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Wrenchd w = testing::random_wrench(rng);
    const PressureVectord dp = pressure_response<double>(w, model());
    const Wrenchd got = from_decoupling_order<double>(k * dp);
    worst = std::max(worst, ((got - w).cwiseQuotient(cap.as_wrench())).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_CASE("structured fit recovers the generating constants") {
  const CalibrationResult r = fit_structured(clean(), model().layout);
  REQUIRE(r.scalars.has_value());
  const double kappa = model().gas.kappa()(0);
  const Eigen::Matrix<double, 6, 1> truth = model().coupling.scalars.as_vector();
  const Eigen::Matrix<double, 6, 1> got = r.scalars->as_vector() / kappa;
  CHECK(((got - truth).cwiseQuotient(truth)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(r.diagnostics.free_parameters == 6);
  CHECK(held_out_error(r.k) < 1e-8);
}

TEST_CASE("dense and block fits generalise to held-out loads") {
  const CalibrationResult dense = fit_dense(clean());
  const CalibrationResult block = fit_block(clean());
  CHECK(dense.diagnostics.free_parameters == 96);
  CHECK(block.diagnostics.free_parameters == 72);
  CHECK(held_out_error(dense.k) < 1e-8);
  CHECK(held_out_error(block.k) < 1e-8);
  CHECK(block.k.bottomRightCorner(3, kChambersPerLayer).isZero(0.0));
}

TEST_CASE("model decoupling matrix inverts the sensitivity") {
  const DecouplingMatrix k = decoupling_from_model(model());
  const Eigen::Matrix<double, kChannels, kAxes> m = pressure_sensitivity(model());
  Eigen::Matrix<double, kAxes, kAxes> reorder = Eigen::Matrix<double, kAxes, kAxes>::Zero();
  for (int i = 0; i < kAxes; ++i) {reorder(i, index(kDecouplingRowOrder[static_cast<std::size_t>(i)])) = 1.0;}
  const Eigen::Matrix<double, kAxes, kAxes> product = k * m;
  CHECK((product - reorder).cwiseAbs().maxCoeff() < 1e-12);
  const double kappa = model().gas.kappa()(0);
  const DecouplingMatrix assembled = assemble_k(model().coupling.scalars, model().layout, kappa);
  CHECK((assembled - k).cwiseAbs().maxCoeff() < 1e-12 * k.cwiseAbs().maxCoeff());
}

TEST_CASE("single-axis log cannot calibrate six axes") {
  ProfileSpec spec = testing::six_axis_ramps();
  for (Axis a : {Axis::Fx, Axis::Fy, Axis::Tx, Axis::Ty, Axis::Tz}) {spec.axis(a).kind = WaveformKind::None;}
  const SimLog log = simulate(generate_profile(spec), model(), NoiseConfig::none());
  try {
    fit_dense(log);
    FAIL("expected insufficient excitation");
  } catch (const RankDeficiencyError & e) {
    CHECK(std::string(e.what()).find("insufficient excitation") != std::string::npos);
    CHECK(e.unexcited_axes().size() == 5);
    CHECK(std::find(e.unexcited_axes().begin(), e.unexcited_axes().end(), Axis::Fz) ==
      e.unexcited_axes().end());
  }
  CHECK_THROWS_AS(fit_block(log), RankDeficiencyError);
  CHECK_THROWS_AS(fit_structured(log, model().layout), RankDeficiencyError);
}

TEST_CASE("collinear excitation is rejected") {
  ProfileSpec spec = testing::six_axis_ramps();
  for (Axis a : kAllAxes) {spec.axis(a).cycles = 3;}
  const SimLog log = simulate(generate_profile(spec), model(), NoiseConfig::none());
  CHECK_THROWS_WITH_AS(fit_dense(log), doctest::Contains("collinear"), RankDeficiencyError);
}

TEST_CASE("loaded tare window is refused") {
  ProfileSpec spec = testing::six_axis_ramps();
  spec.lead_in = 0.0;
  const SimLog log = simulate(generate_profile(spec), model(), NoiseConfig::none());
  CHECK_THROWS_WITH_AS(fit_dense(log), doctest::Contains("baseline window is loaded"), Error);
}

TEST_CASE("non-finite rows are skipped") {
  SimLog log = clean();
  log.pressure(5000, 3) = std::nan("");
  const CalibrationData data = tared_calibration_data(log);
  CHECK(data.dp.rows() == log.size() - 1);
  const CalibrationResult r = fit_structured(data, model().layout);
  CHECK(held_out_error(r.k) < 1e-8);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("dense") == Strategy::Dense);
  CHECK(parse_strategy("block") == Strategy::Block);
  CHECK(parse_strategy("structured") == Strategy::Structured);
  CHECK(strategy_name(Strategy::Block) == "block");
  CHECK_THROWS_AS(parse_strategy("sparse"), Error);
}

TEST_CASE("noisy calibration reports diagnostics") {
  NoiseConfig noise;
  noise.gaussian_std = 20.0;
  noise.seed = 5;
  const SimLog log = simulate(generate_profile(testing::six_axis_ramps()), model(), noise);
  const CalibrationResult r = fit_structured(log, model().layout);
  CHECK(r.diagnostics.samples == static_cast<std::size_t>(log.size()));
  CHECK(r.diagnostics.residual_rms.maxCoeff() > 0.0);
  CHECK(r.diagnostics.condition_number >= 1.0);
  CHECK(held_out_error(r.k) < 1e-2);
}
