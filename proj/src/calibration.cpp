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

#include "hexwrench/calibration.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace hexwrench
{

namespace
{

using Block3x8 = Eigen::Matrix<double, 3, kChambersPerLayer>;

struct Solution
{
  Eigen::MatrixXd coefficients;
  double condition_number{0.0};
  int rank{0};
};

/// min ||X B - Y|| with minimum-norm B; optional ridge.
Solution solve_least_squares(
  const Eigen::MatrixXd & x, const Eigen::MatrixXd & y, const CalibrationOptions & opt)
{
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(opt.rank_tolerance);
  Solution s;
  s.rank = static_cast<int>(svd.rank());
  const auto & sv = svd.singularValues();
  s.condition_number = s.rank > 0 ? sv(0) / sv(s.rank - 1) : INFINITY;
  if (opt.ridge > 0.0) {
    const Eigen::MatrixXd gram =
      x.transpose() * x + opt.ridge * Eigen::MatrixXd::Identity(x.cols(), x.cols());
    s.coefficients = gram.ldlt().solve(x.transpose() * y);
  } else {
    s.coefficients = svd.solve(y);
  }
  return s;
}

Eigen::MatrixXd decoupling_ordered(const WrenchRows & w)
{
  Eigen::MatrixXd out(w.rows(), kAxes);
  for (int i = 0; i < kAxes; ++i) {
    out.col(i) = w.col(index(kDecouplingRowOrder[static_cast<std::size_t>(i)]));
  }
  return out;
}

void finish(CalibrationResult & r, const CalibrationData & data, const CalibrationOptions & opt)
{
  const WrenchRows residual = data.wrench - predict(r.k, data.dp);
  const double n = static_cast<double>(std::max<Eigen::Index>(residual.rows(), 1));
  r.diagnostics.residual_rms = (residual.colwise().squaredNorm() / n).cwiseSqrt().transpose();
  r.diagnostics.samples = static_cast<std::size_t>(data.dp.rows());
  r.diagnostics.ill_conditioned =
    !std::isfinite(r.diagnostics.condition_number) ||
    r.diagnostics.condition_number > opt.ill_conditioned_above;
  r.baseline = data.baseline;
}

void require_samples(const CalibrationData & data, Eigen::Index minimum)
{
  if (data.dp.rows() != data.wrench.rows()) {
    throw Error("calibration data: pressure and wrench row counts differ");
  }
  if (data.dp.rows() < minimum) {
    throw Error(
      "calibration needs at least " + std::to_string(minimum) + " samples, got " +
      std::to_string(data.dp.rows()));
  }
}

Eigen::MatrixXd pinv(const Eigen::MatrixXd & m)
{
  return m.completeOrthogonalDecomposition().pseudoInverse();
}

}  // namespace

std::string_view strategy_name(Strategy s)
{
  switch (s) {
    case Strategy::Dense: return "dense";
    case Strategy::Block: return "block";
    case Strategy::Structured: return "structured";
  }
  return "dense";
}

Strategy parse_strategy(std::string_view name)
{
  if (name == "dense") {return Strategy::Dense;}
  if (name == "block") {return Strategy::Block;}
  if (name == "structured") {return Strategy::Structured;}
  throw Error("unknown calibration strategy '" + std::string(name) + "'");
}

CalibrationData tared_calibration_data(const SimLog & log, const CalibrationOptions & options)
{
  if (log.pressure.rows() != log.size() || log.wrench.rows() != log.size()) {
    throw Error("log columns have inconsistent lengths");
  }
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(log.size()));
  for (Eigen::Index i = 0; i < log.size(); ++i) {
    if (log.pressure.row(i).allFinite() && log.wrench.row(i).allFinite()) {keep.push_back(i);}
  }
  const auto window = std::max<Eigen::Index>(
    1, static_cast<Eigen::Index>(std::llround(options.baseline_seconds * log.sample_rate)));
  if (static_cast<Eigen::Index>(keep.size()) < window) {
    throw Error("log shorter than the baseline window");
  }

  CalibrationData data;
  PressureVectord sum = PressureVectord::Zero();
  for (Eigen::Index j = 0; j < window; ++j) {
    const Eigen::Index i = keep[static_cast<std::size_t>(j)];
    for (Axis a : kAllAxes) {
      if (std::abs(log.wrench(i, index(a))) > 0.01 * options.capacity.full_scale(a)) {
        throw Error(
          "baseline window is loaded on axis " + std::string(axis_name(a)) + " at t=" +
          std::to_string(log.t(i)));
      }
    }
    sum += log.pressure.row(i).transpose();
  }
  data.baseline = sum / static_cast<double>(window);

  const auto n = static_cast<Eigen::Index>(keep.size());
  data.dp.resize(n, kChannels);
  data.wrench.resize(n, kAxes);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index i = keep[static_cast<std::size_t>(j)];
    data.dp.row(j) = log.pressure.row(i) - data.baseline.transpose();
    data.wrench.row(j) = log.wrench.row(i);
  }
  return data;
}

void check_excitation(const WrenchRows & wrench, const Capacity & capacity)
{
  const WrenchRows scaled = wrench * capacity.as_wrench().cwiseInverse().asDiagonal();
  const double n = static_cast<double>(std::max<Eigen::Index>(scaled.rows(), 1));
  std::vector<Axis> unexcited;
  for (Axis a : kAllAxes) {
    if (std::sqrt(scaled.col(index(a)).squaredNorm() / n) < 1e-6) {unexcited.push_back(a);}
  }
  if (!unexcited.empty()) {
    std::string names;
    for (Axis a : unexcited) {
      names += (names.empty() ? "" : ", ") + std::string(axis_name(a));
    }
    throw RankDeficiencyError(unexcited, "insufficient excitation: unexcited axes " + names);
  }
  const Eigen::Matrix<double, kAxes, kAxes> gram = scaled.transpose() * scaled / n;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, kAxes, kAxes>> eig(gram);
  const auto & ev = eig.eigenvalues();
  if (ev(0) <= 1e-12 * ev(kAxes - 1)) {
    throw RankDeficiencyError({}, "insufficient excitation: collinear load axes");
  }
}

WrenchRows predict(const DecouplingMatrix & k, const PressureRows & dp)
{
  const Eigen::MatrixXd decoded = dp * k.transpose();
  WrenchRows out(dp.rows(), kAxes);
  for (int i = 0; i < kAxes; ++i) {
    out.col(index(kDecouplingRowOrder[static_cast<std::size_t>(i)])) = decoded.col(i);
  }
  return out;
}

CalibrationResult fit_dense(const CalibrationData & data, const CalibrationOptions & options)
{
  require_samples(data, kChannels);
  check_excitation(data.wrench, options.capacity);
  const Eigen::MatrixXd x = data.dp;
  const Eigen::MatrixXd y = decoupling_ordered(data.wrench);
  const Solution s = solve_least_squares(x, y, options);

  CalibrationResult r;
  r.strategy = Strategy::Dense;
  r.k = s.coefficients.transpose();
  r.diagnostics.condition_number = s.condition_number;
  r.diagnostics.rank = s.rank;
  r.diagnostics.free_parameters = static_cast<std::size_t>(s.coefficients.size());
  finish(r, data, options);
  return r;
}

CalibrationResult fit_block(const CalibrationData & data, const CalibrationOptions & options)
{
  require_samples(data, kChannels);
  check_excitation(data.wrench, options.capacity);
  const Eigen::MatrixXd y = decoupling_ordered(data.wrench);

  // [Fz Tx Ty] from the lower chambers only.
  const Solution lower = solve_least_squares(data.dp.leftCols(kChambersPerLayer), y.rightCols(3), options);
  // [Fx Fy Tz] from all sixteen.
  const Solution upper = solve_least_squares(data.dp, y.leftCols(3), options);

  CalibrationResult r;
  r.strategy = Strategy::Block;
  r.k.topRows(3) = upper.coefficients.transpose();
  r.k.bottomLeftCorner(3, kChambersPerLayer) = lower.coefficients.transpose();
  r.k.bottomRightCorner(3, kChambersPerLayer).setZero();
  r.diagnostics.condition_number = std::max(lower.condition_number, upper.condition_number);
  r.diagnostics.rank = lower.rank + upper.rank;
  r.diagnostics.free_parameters =
    static_cast<std::size_t>(lower.coefficients.size() + upper.coefficients.size());
  finish(r, data, options);
  return r;
}

CalibrationResult fit_structured(
  const CalibrationData & data, const ChamberLayout<double> & layout, const CalibrationOptions & options)
{
  require_samples(data, kAxes);
  check_excitation(data.wrench, options.capacity);

  const auto txy_l = direction_matrix(layout.lower);
  const auto txy_u = direction_matrix(layout.upper);
  const auto & pairing = layout.geometry.upper_pairing;

  // dp = Phi(w) * theta, theta = kappa * (alpha_l, lambda_l, beta_u, xi_u, alpha_u, lambda_u)
  const Eigen::Index n = data.dp.rows();
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n * kChannels, 6);
  Eigen::VectorXd target(n * kChannels);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double fx = data.wrench(i, index(Axis::Fx));
    const double fy = data.wrench(i, index(Axis::Fy));
    const double fz = data.wrench(i, index(Axis::Fz));
    const double tx = data.wrench(i, index(Axis::Tx));
    const double ty = data.wrench(i, index(Axis::Ty));
    const double tz = data.wrench(i, index(Axis::Tz));
    for (int k = 0; k < kChambersPerLayer; ++k) {
      const Eigen::Index lo = i * kChannels + k;
      phi(lo, 0) = -fz;
      phi(lo, 1) = txy_l(k, 0) * tx + txy_l(k, 1) * ty;
      target(lo) = data.dp(i, k);

      const Eigen::Index up = lo + kChambersPerLayer;
      phi(up, 2) = txy_u(k, 0) * fx + txy_u(k, 1) * fy;
      phi(up, 3) = pairing[static_cast<std::size_t>(k)] * tz;
      phi(up, 4) = -fz;
      phi(up, 5) = txy_u(k, 0) * tx + txy_u(k, 1) * ty;
      target(up) = data.dp(i, k + kChambersPerLayer);
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi);
  const Eigen::Matrix<double, 6, 1> theta = qr.solve(target);
  const Eigen::Matrix<double, 6, 6> rmat =
    qr.matrixR().topLeftCorner(6, 6).triangularView<Eigen::Upper>();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>>(rmat).singularValues();

  Eigen::Matrix<double, 6, 1> contribution;
  for (int j = 0; j < 6; ++j) {
    contribution(j) = std::abs(theta(j)) * phi.col(j).norm();
  }
  for (int j = 0; j < 6; ++j) {
    if (!(contribution(j) > options.degenerate_tolerance * contribution.maxCoeff())) {
      throw DegenerateSensitivityError(
        "degenerate sensitivity: fitted " +
        std::string(CouplingScalars<double>::names[static_cast<std::size_t>(j)]) + " is ~0");
    }
  }

  CalibrationResult r;
  r.strategy = Strategy::Structured;
  r.scalars = CouplingScalars<double>::from_vector(theta);
  r.k = assemble_k(*r.scalars, layout, 1.0);
  r.diagnostics.condition_number = sv(0) / sv(5);
  r.diagnostics.rank = static_cast<int>(qr.rank());
  r.diagnostics.free_parameters = static_cast<std::size_t>(theta.size());
  finish(r, data, options);
  return r;
}

CalibrationResult fit_dense(const SimLog & log, const CalibrationOptions & options)
{
  return fit_dense(tared_calibration_data(log, options), options);
}

CalibrationResult fit_block(const SimLog & log, const CalibrationOptions & options)
{
  return fit_block(tared_calibration_data(log, options), options);
}

CalibrationResult fit_structured(
  const SimLog & log, const ChamberLayout<double> & layout, const CalibrationOptions & options)
{
  return fit_structured(tared_calibration_data(log, options), layout, options);
}

DecouplingMatrix assemble_k(
  const CouplingScalars<double> & scalars, const ChamberLayout<double> & layout, double kappa)
{
  if (kappa == 0.0 || !std::isfinite(kappa)) {throw Error("kappa must be finite and non-zero");}
  const CouplingMatrices<double> c = assemble_coupling(scalars, layout);
  const Eigen::MatrixXd b_l = pinv(kappa * c.t_l);
  const Eigen::MatrixXd b_u2 = pinv(kappa * c.t_u1);
  const Eigen::MatrixXd b_u1 = -b_u2 * c.t_u2 * pinv(c.t_l);

  DecouplingMatrix k;
  k.topLeftCorner(3, kChambersPerLayer) = b_u1;
  k.topRightCorner(3, kChambersPerLayer) = b_u2;
  k.bottomLeftCorner(3, kChambersPerLayer) = b_l;
  k.bottomRightCorner(3, kChambersPerLayer).setZero();
  return k;
}

DecouplingMatrix decoupling_from_model(const SensorModeld & model)
{
  const PressureVectord kappa = model.gas.kappa();
  const auto & c = model.coupling;
  const Eigen::MatrixXd kl = kappa.head<kChambersPerLayer>().asDiagonal() * c.t_l;
  const Eigen::MatrixXd ku1 = kappa.tail<kChambersPerLayer>().asDiagonal() * c.t_u1;
  const Eigen::MatrixXd ku2 = kappa.tail<kChambersPerLayer>().asDiagonal() * c.t_u2;
  const Eigen::MatrixXd b_l = pinv(kl);
  const Eigen::MatrixXd b_u2 = pinv(ku1);

  DecouplingMatrix k;
  k.topLeftCorner(3, kChambersPerLayer) = -b_u2 * ku2 * b_l;
  k.topRightCorner(3, kChambersPerLayer) = b_u2;
  k.bottomLeftCorner(3, kChambersPerLayer) = b_l;
  k.bottomRightCorner(3, kChambersPerLayer).setZero();
  return k;
}

}  // namespace hexwrench
