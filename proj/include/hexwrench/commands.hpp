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

/**
 * @file commands.hpp
 *
 * File-to-file pipeline steps behind the command-line tool. Each step reads
 * its inputs, writes every output or throws; outputs depend only on the
 * inputs and configuration.
 *
 * Every CSV written here gets a sidecar "<file>.meta.json" (schema_version,
 * kind, row count, sample rate and, for logs, seed and model hash). Sidecars
 * are optional on input; when present they are validated.
 */

#ifndef HEXWRENCH__COMMANDS_HPP_
#define HEXWRENCH__COMMANDS_HPP_

#include "hexwrench/csv_io.hpp"
#include "hexwrench/json_io.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace hexwrench
{

namespace fs = std::filesystem;

fs::path sidecar_path(const fs::path & csv);

/// Hash of the model's JSON form.
std::string model_hash(const SensorModeld & model);

SimLog load_log(const fs::path & csv);
WrenchSeries load_wrench_series(const fs::path & csv);

/// Writes CSV and sidecar.
void save_log(const fs::path & csv, const SimLog & log);
void save_wrench_series(
  const fs::path & csv, const WrenchSeries & series, const std::vector<std::size_t> & rejected_rows = {});

/**
 * Put two series on common timestamps. Identical timestamps pass through;
 * otherwise, with resample, `series` is linearly interpolated onto the
 * timestamps of `onto` inside their common span. Without resample a
 * mismatch throws.
 */
std::pair<WrenchSeries, WrenchSeries> align(
  const WrenchSeries & series, const WrenchSeries & onto, bool resample);

SimLog run_simulate(const RunConfig & config, const fs::path & out_csv);

CalibrationResult run_calibrate(
  const RunConfig & config, const fs::path & log_csv, Strategy strategy, const fs::path & out_cal);

struct DecoupleOptions
{
  /// Tare from this many seconds at the start of the log; 0 uses the
  /// baseline stored with the calibration.
  double tare_seconds{0.5};
  int smoothing_window{1};
};

WrenchSeries run_decouple(
  const fs::path & log_csv, const fs::path & cal_file, const fs::path & out_csv,
  const DecoupleOptions & options = {});

/**
 * Writes the JSON report plus plot data next to it, named from the report
 * stem: <stem>.static.csv/.svg (measured vs reference), <stem>.hysteresis.csv/.svg
 * (loading and unloading branches), <stem>.drift.csv/.svg (unloaded samples).
 */
EvalReport run_evaluate(
  const RunConfig & config, const fs::path & meas_csv, const fs::path & ref_csv,
  const fs::path & out_report, bool resample);

/// Writes the transfer-function JSON, <stem>.bode.csv and <stem>.bode.svg.
std::array<std::optional<FirstOrderFit>, kAxes> run_sysid(
  const RunConfig & config, const fs::path & input_csv, const fs::path & output_csv,
  const fs::path & out_tf, bool resample);

}  // namespace hexwrench

#endif  // HEXWRENCH__COMMANDS_HPP_
