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

#ifndef HEXWRENCH__CALIBRATION_HPP_
#define HEXWRENCH__CALIBRATION_HPP_

#include "hexwrench/core_model.hpp"
#include "hexwrench/signal_sim.hpp"
#include "hexwrench/types.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace hexwrench
{

/// dense: 6x16 free entries; block: lower-right 3x8 forced to zero; structured: six scalars.
enum class Strategy { Dense, Block, Structured };

std::string_view strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);

class DegenerateSensitivityError : public Error
{
public:
  using Error::Error;
};

struct CalibrationOptions
{
  /// Unloaded window at the start of the log used as the tare, seconds.
  double baseline_seconds{0.5};
  /// Ridge penalty for dense/block fits; 0 = ordinary least squares.
  double ridge{0.0};
  /// Singular values below this fraction of the largest are treated as zero.
  double rank_tolerance{1e-10};
  double ill_conditioned_above{1e8};
  /// Structured fit: a scalar whose pressure contribution is below this
  /// fraction of the largest one is degenerate.
  double degenerate_tolerance{1e-9};
  Capacity capacity{};
};

/// Tared pressure changes paired with reference wrenches (canonical order).
struct CalibrationData
{
  PressureRows dp;
  WrenchRows wrench;
  PressureVectord baseline{PressureVectord::Zero()};
};

struct CalibrationDiagnostics
{
  /// Per canonical axis, in the axis' own unit.
  Wrenchd residual_rms{Wrenchd::Zero()};
  double condition_number{0.0};
  bool ill_conditioned{false};
  int rank{0};
  std::size_t free_parameters{0};
  std::size_t samples{0};
};

struct CalibrationResult
{
  Strategy strategy{Strategy::Dense};
  /// Rows ordered (Fx, Fy, Tz, Fz, Tx, Ty); columns p01..p16.
  DecouplingMatrix k{DecouplingMatrix::Zero()};
  CalibrationDiagnostics diagnostics;
  /// Structured fits only: kappa-scaled deformation constants.
  std::optional<CouplingScalars<double>> scalars;
  PressureVectord baseline{PressureVectord::Zero()};
};

/**
 * Tare a log against its first options.baseline_seconds and drop rows with
 * non-finite values. Throws when the tare window is loaded (> 1% capacity).
 */
CalibrationData tared_calibration_data(const SimLog & log, const CalibrationOptions & options = {});

/**
 * Throws RankDeficiencyError naming unexcited axes when the reference
 * wrenches (scaled by capacity) do not span all six axes.
 */
void check_excitation(const WrenchRows & wrench, const Capacity & capacity);

CalibrationResult fit_dense(const CalibrationData & data, const CalibrationOptions & options = {});
CalibrationResult fit_block(const CalibrationData & data, const CalibrationOptions & options = {});
CalibrationResult fit_structured(
  const CalibrationData & data, const ChamberLayout<double> & layout,
  const CalibrationOptions & options = {});

CalibrationResult fit_dense(const SimLog & log, const CalibrationOptions & options = {});
CalibrationResult fit_block(const SimLog & log, const CalibrationOptions & options = {});
CalibrationResult fit_structured(
  const SimLog & log, const ChamberLayout<double> & layout, const CalibrationOptions & options = {});

/**
 * Decoupling matrix from the six deformation constants.
 *
 *   B_l  = (kappa T_l)^+
 *   B_u2 = (kappa T_u1)^+
 *   B_u1 = -(kappa T_u1)^+ T_u2 T_l^+
 *
 * with ^+ the Moore-Penrose left inverse of the 8x3 blocks.
 */
DecouplingMatrix assemble_k(
  const CouplingScalars<double> & scalars, const ChamberLayout<double> & layout, double kappa);

/// Exact decoupling matrix of a model, honouring per-chamber kappa.
DecouplingMatrix decoupling_from_model(const SensorModeld & model);

/// Predicted wrenches (canonical order) for tared pressure rows.
WrenchRows predict(const DecouplingMatrix & k, const PressureRows & dp);

}  // namespace hexwrench

#endif  // HEXWRENCH__CALIBRATION_HPP_
