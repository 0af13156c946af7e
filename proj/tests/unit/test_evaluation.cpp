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

#include "brute_force_metrics.hpp"
#include "fixtures.hpp"

#include "hexwrench/evaluation.hpp"

#include <doctest.h>

#include <random>

using namespace hexwrench;

namespace
{

std::vector<double> to_std(const Eigen::VectorXd & v) {return {v.data(), v.data() + v.size()};}

}  // namespace

TEST_CASE("repeatability of two shifted cycles") {
  Eigen::VectorXd ref(4);
  ref << 0.0, 2.0, 0.0, 2.0;
  Eigen::VectorXd meas(4);
  meas << 0.0, 2.0, 0.3, 2.3;
  CHECK(cycle_starts(ref) == std::vector<Eigen::Index>{0, 2});
  CHECK(repeatability_error(meas, ref) == doctest::Approx(0.075).epsilon(1e-15));
}

TEST_CASE("non-linearity of a quadratic bump") {
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(11, 0.0, 1.0);
  const Eigen::VectorXd y = (x.array() + 0.1 * x.array() * (1.0 - x.array())).matrix();
  CHECK(nonlinearity_error(y, x) == doctest::Approx(0.007523510971786852).epsilon(1e-12));
  const LinearFit f = linear_fit(y, x);
  CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hysteresis of a play-operator loop") {
  const Eigen::VectorXd x = testing::triangle_cycles(10.0, 2000, 4);
  const Eigen::VectorXd y = apply_hysteresis(x, 0.5);
  CHECK(hysteresis_error(y, x) == doctest::Approx(0.052631578947368).epsilon(1e-12));
  const HysteresisBranches b = hysteresis_branches(y, x);
  CHECK(b.grid.size() == 50);
  CHECK(hysteresis_error(b.loading, b.unloading, y.cwiseAbs().maxCoeff()) ==
    doctest::Approx(0.052631578947368).epsilon(1e-12));
}

TEST_CASE("accuracy combines the three error terms") {
  CHECK(accuracy_error(2.1, 4.9, 3.5) == doctest::Approx(6.377303505401009).epsilon(1e-15));
  CHECK_THROWS_AS(accuracy_error(-1.0, 0.0, 0.0), Error);
}

TEST_CASE("deviation and drift") {
  Eigen::VectorXd ref(4);
  ref << 0.0, 1.0, 2.0, 4.0;
  Eigen::VectorXd meas = ref;
  meas(3) = 5.0;
  CHECK(deviation_rate(meas, ref) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK_THROWS_AS(deviation_rate(meas, Eigen::VectorXd::Zero(4)), Error);
  Eigen::VectorXd quiet(3);
  quiet << 0.1, -0.2, 0.3;
  CHECK(drift_error(quiet, 50.0) == doctest::Approx(0.2 / 50.0).epsilon(1e-15));
  CHECK_THROWS_AS(drift_error(Eigen::VectorXd(), 50.0), Error);
}

TEST_CASE("zero-intercept regression") {
  Eigen::VectorXd x(5);
  x << 1.0, 2.0, 3.0, 4.0, 5.0;
  SUBCASE("exact line") {
    const ZeroInterceptFit f = zero_intercept_regression(x, x);
    CHECK(f.slope == 1.0);
    CHECK(f.r_squared == 1.0);
    CHECK(f.ci_low == 1.0);
    CHECK(f.ci_high == 1.0);
  }
  SUBCASE("interval from the t distribution") {
    Eigen::VectorXd y(5);
    y << 1.1, 1.9, 3.2, 3.9, 5.1;
    const ZeroInterceptFit f = zero_intercept_regression(y, x);
    const double slope = x.dot(y) / x.squaredNorm();
    const double ss = (y - slope * x).squaredNorm();
    // t quantile 0.975 with 4 degrees of freedom
    const double half_width = 2.7764451051977987 * std::sqrt(ss / 4.0 / x.squaredNorm());
    CHECK(f.slope == doctest::Approx(slope).epsilon(1e-15));
    CHECK(f.ci_high - f.slope == doctest::Approx(half_width).epsilon(1e-12));
    CHECK(f.slope - f.ci_low == doctest::Approx(half_width).epsilon(1e-12));
    CHECK(f.r_squared < 1.0);
    CHECK(f.r_squared > 0.99);
  }
  CHECK_THROWS_AS(zero_intercept_regression(x.head(2), x.head(2)), Error);
  CHECK_THROWS_AS(zero_intercept_regression(x, Eigen::VectorXd::Zero(5)), Error);
}

TEST_CASE("segmentation of bipolar ramps") {
  ProfileSpec spec = testing::six_axis_ramps();
  const LoadProfile p = generate_profile(spec);
  const Eigen::VectorXd fz = p.wrench.col(index(Axis::Fz));
  const auto starts = cycle_starts(fz);
  REQUIRE(starts.size() == 4);
  for (std::size_t j = 1; j < starts.size(); ++j) {CHECK(starts[j] - starts[j - 1] == 2304);}
  CHECK(repeatability_error(fz, fz) < 1e-15);
  CHECK(hysteresis_error(fz, fz) < 1e-15);
}

TEST_CASE("metrics match the loop-by-loop oracle on random series") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [meas, ref] = testing::noisy_cycle_pair(rng);
    const auto m = to_std(meas);
    const auto r = to_std(ref);
    CHECK(std::abs(deviation_rate(meas, ref) - testing::brute::deviation(m, r)) < 1e-12);
    CHECK(std::abs(repeatability_error(meas, ref) - testing::brute::repeatability(m, r)) < 1e-12);
    CHECK(std::abs(nonlinearity_error(meas, ref) - testing::brute::nonlinearity(m, r)) < 1e-12);
    CHECK(std::abs(hysteresis_error(meas, ref, 50) - testing::brute::hysteresis(m, r, 50)) < 1e-12);
    CHECK(std::abs(drift_error(meas.head(10), 50.0) - testing::brute::drift(
        {m.begin(), m.begin() + 10}, 50.0)) < 1e-12);
  }
}

TEST_CASE("metrics are unchanged when both series are rescaled") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [meas, ref] = testing::noisy_cycle_pair(rng);
    const double s = 3.7;
    CHECK(deviation_rate(s * meas, s * ref) == doctest::Approx(deviation_rate(meas, ref)).epsilon(1e-12));
    CHECK(repeatability_error(s * meas, s * ref) == doctest::Approx(repeatability_error(meas, ref)).epsilon(1e-12));
    CHECK(nonlinearity_error(s * meas, s * ref) == doctest::Approx(nonlinearity_error(meas, ref)).epsilon(1e-12));
    CHECK(hysteresis_error(s * meas, s * ref) == doctest::Approx(hysteresis_error(meas, ref)).epsilon(1e-12));
    CHECK(drift_error(s * meas, s * 50.0) == doctest::Approx(drift_error(meas, 50.0)).epsilon(1e-12));
  }
}

TEST_CASE("too little structure for a metric") {
  Eigen::VectorXd ref(5);
  ref << 0.0, 1.0, 2.0, 1.0, 0.0;
  CHECK_THROWS_WITH_AS(repeatability_error(ref, ref), doctest::Contains("two load cycles"), Error);
  CHECK_THROWS_AS(nonlinearity_error(ref, Eigen::VectorXd::Constant(5, 1.0)), Error);
  Eigen::VectorXd rising = Eigen::VectorXd::LinSpaced(10, 0.0, 1.0);
  CHECK_THROWS_WITH_AS(hysteresis_error(rising, rising), doctest::Contains("overlap"), Error);
  CHECK_THROWS_AS(hysteresis_error(Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(4), 1.0), Error);
}

TEST_CASE("report of a perfect measurement") {
  const LoadProfile p = generate_profile(testing::six_axis_ramps());
  const EvalReport r = evaluate(p.wrench, p.wrench);
  for (Axis a : kAllAxes) {
    const AxisReport & x = r.axis(a);
    REQUIRE(x.deviation.has_value());
    REQUIRE(x.accuracy.has_value());
    CHECK(*x.deviation == 0.0);
    CHECK(*x.nonlinearity < 1e-15);
    CHECK(*x.repeatability < 1e-15);
    CHECK(*x.hysteresis < 1e-15);
    CHECK(*x.drift == 0.0);
    CHECK(x.regression->slope == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x.regression->r_squared == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(*x.accuracy == accuracy_error(*x.repeatability, *x.nonlinearity, *x.hysteresis));
  }
}

TEST_CASE("unloaded axes get no load metrics") {
  ProfileSpec spec = testing::six_axis_ramps();
  spec.axis(Axis::Tz).kind = WaveformKind::None;
  const LoadProfile p = generate_profile(spec);
  const EvalReport r = evaluate(p.wrench, p.wrench);
  CHECK_FALSE(r.axis(Axis::Tz).deviation.has_value());
  CHECK_FALSE(r.axis(Axis::Tz).regression.has_value());
  CHECK(r.axis(Axis::Tz).drift.has_value());
  CHECK(r.axis(Axis::Fx).deviation.has_value());
}
